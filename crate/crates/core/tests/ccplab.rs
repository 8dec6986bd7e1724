use hamtet::ccplab::{
    blow_up, dedicated_cycles, find_ham_cycle, find_ham_path, gadget38, is_ham_cycle, is_ham_path, k4,
    k4_counterexample, lower_bound_family, matching_partition, pulling_face, pulling_tetrahedralization, q3, HamSearch,
    Pulling,
};
use hamtet::corpus::{icosahedron, octahedron, sphere_points};
use hamtet::graph::{is_three_connected, trace_faces, Graph};
use hamtet::verify::{verify_certificate, verify_mesh};
use hamtet::Error;

#[test]
fn gadget_is_cubic_planar_three_connected() {
    let g = gadget38();
    assert_eq!(g.num_vertices(), 38);
    assert_eq!(g.graph().num_edges(), 57);
    assert!(g.graph().is_cubic());
    assert_eq!(g.rot.euler_characteristic().unwrap(), 2);
    assert!(is_three_connected(g.graph()));
}

#[test]
fn gadget_has_no_hamiltonian_cycle() {
    assert_eq!(find_ham_cycle(gadget38().graph(), 50_000_000), HamSearch::Absent);
}

#[test]
fn counterexample_counts() {
    let g = k4_counterexample(&gadget38()).unwrap();
    assert_eq!(g.num_vertices(), 164);
    assert_eq!(g.graph().num_edges(), 246);
    assert_eq!(trace_faces(&g.rot).unwrap().len(), 84);
    assert!(g.graph().is_cubic());
    assert!(is_three_connected(g.graph()));
    let labels = g.copy_labels().unwrap();
    for c in 0..4 {
        assert_eq!(labels.iter().filter(|&&l| l == c).count(), 41);
    }
}

#[test]
fn blow_up_of_hamiltonian_graphs() {
    // Blowing a K4 into a cube keeps the graph Hamiltonian.
    let g = blow_up(&q3(), 3, &k4(), 1, 2, 0).unwrap();
    assert_eq!(g.num_vertices(), 8 + 4 + 2);
    assert!(is_three_connected(g.graph()));
    let c = find_ham_cycle(g.graph(), 100_000);
    assert!(is_ham_cycle(g.graph(), c.found().unwrap()));
}

#[test]
fn lower_bound_family_on_cube() {
    let g = lower_bound_family(&q3(), &k4()).unwrap();
    assert_eq!(g.num_vertices(), 8 * 7);
    assert!(g.graph().is_cubic());
    assert_eq!(g.rot.euler_characteristic().unwrap(), 2);
}

#[test]
fn ham_path_search() {
    let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let p = find_ham_path(&path, 1000);
    assert!(is_ham_path(&path, p.found().unwrap()));
    let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    assert_eq!(find_ham_path(&star, 1000), HamSearch::Absent);
    assert_eq!(find_ham_cycle(&path, 1000), HamSearch::Absent);
}

#[test]
fn pulling_face_rejects_non_cycles() {
    assert!(pulling_face(&k4().rot, &[0, 1, 2]).is_err());
}

fn pulled(points: &[hamtet::Point3]) -> (usize, bool) {
    match pulling_tetrahedralization(points, 1_000_000).unwrap() {
        Pulling::Success { mesh, certificate, .. } => {
            let report = verify_mesh(points, &mesh).with_certificate(&verify_certificate(&mesh, &certificate));
            (mesh.num_live(), report.all_ok())
        }
        Pulling::NoCycle(s) => panic!("no cycle: {s:?}"),
    }
}

#[test]
fn pulling_octahedron_and_icosahedron() {
    assert_eq!(pulled(&octahedron()), (4, true));
    assert_eq!(pulled(&icosahedron(3)), (15, true));
}

#[test]
fn pulling_sphere_points() {
    for seed in 0..5 {
        let pts = sphere_points(14, seed);
        let (tets, ok) = pulled(&pts);
        assert!(ok);
        assert!(tets >= pts.len() - 3);
    }
}

#[test]
fn pulling_rejects_interior_points() {
    let mut pts = octahedron();
    pts.push(hamtet::Point3::from_ints(0, 0, 0));
    assert!(matches!(
        pulling_tetrahedralization(&pts, 1000),
        Err(Error::InteriorPointsPresent(1))
    ));
}

#[test]
fn counterexample_partition_has_a_cycle_per_copy() {
    let g = k4_counterexample(&gadget38()).unwrap();
    let cycles = matching_partition(g.graph()).unwrap();
    assert!(cycles.len() >= 4);
    let per_copy = dedicated_cycles(&cycles, &g.copy_labels().unwrap());
    assert_eq!(per_copy.len(), 4);
    assert!(per_copy.values().all(|&k| k >= 1), "{per_copy:?}");
}

#[test]
fn copies_are_joined_by_the_k4_edges() {
    let g = k4_counterexample(&gadget38()).unwrap();
    let labels = g.copy_labels().unwrap();
    let crossing: Vec<_> = g
        .graph()
        .edges()
        .into_iter()
        .filter(|&(a, b)| labels[a] != labels[b])
        .collect();
    // Each K4 edge becomes one edge between the gadgets at its ends.
    assert_eq!(crossing.len(), 6);
    let inner: Vec<_> = g
        .graph()
        .edges()
        .into_iter()
        .filter(|&(a, b)| labels[a] == labels[b])
        .collect();
    let split = Graph::from_edges(164, &inner).unwrap();
    for c in 0..4 {
        let outside: Vec<usize> = (0..164).filter(|&x| labels[x] != c).collect();
        assert!(split.is_connected_without(&outside));
    }
}

#[test]
fn q3_minus_a_face_has_a_path() {
    let q = q3();
    let (rest, _) = q.graph().without_vertices(&[0, 1, 2, 3]);
    let p = find_ham_path(&rest, 1000);
    assert!(is_ham_path(&rest, p.found().unwrap()));
}

#[test]
fn q3_pulling_faces_are_quadrilaterals() {
    let q = q3();
    let cycle = find_ham_cycle(q.graph(), 1000);
    let pf = pulling_face(&q.rot, cycle.found().unwrap()).unwrap();
    assert_eq!(pf.face.len(), 4);
    let (rest, old) = q.graph().without_vertices(&pf.face);
    let local: Vec<usize> = pf
        .path
        .iter()
        .map(|x| old.iter().position(|y| y == x).unwrap())
        .collect();
    assert!(is_ham_path(&rest, &local));
}

fn brute_force_hamiltonian(g: &Graph) -> bool {
    let n = g.num_vertices();
    let mut rest: Vec<usize> = (1..n).collect();
    fn go(g: &Graph, path: &mut Vec<usize>, rest: &mut Vec<usize>) -> bool {
        if rest.is_empty() {
            return g.has_edge(*path.last().unwrap(), path[0]);
        }
        for i in 0..rest.len() {
            let x = rest[i];
            if g.has_edge(*path.last().unwrap(), x) {
                rest.remove(i);
                path.push(x);
                if go(g, path, rest) {
                    return true;
                }
                path.pop();
                rest.insert(i, x);
            }
        }
        false
    }
    n >= 3 && go(g, &mut vec![0], &mut rest)
}

#[test]
fn search_agrees_with_brute_force_on_small_graphs() {
    use rand::{Rng, SeedableRng};
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = r.gen_range(3..=9);
        let mut e = vec![];
        for a in 0..n {
            for b in a + 1..n {
                if r.gen_bool(0.4) {
                    e.push((a, b));
                }
            }
        }
        let g = Graph::from_edges(n, &e).unwrap();
        let found = find_ham_cycle(&g, 1_000_000);
        assert_ne!(found, HamSearch::BudgetExhausted);
        assert_eq!(found.found().is_some(), brute_force_hamiltonian(&g), "{e:?}");
        if let Some(c) = found.found() {
            assert!(is_ham_cycle(&g, c));
        }
    }
}
