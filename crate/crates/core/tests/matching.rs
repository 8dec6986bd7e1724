use hamtet::graph::Graph;
use hamtet::matching::{maximum_matching, perfect_matching};
use hamtet::Error;
use rand::{Rng, SeedableRng};

/// Size of a maximum matching by exhaustive search.
fn brute_max(g: &Graph) -> usize {
    fn go(g: &Graph, v: usize, used: &mut Vec<bool>) -> usize {
        let n = g.num_vertices();
        let Some(v) = (v..n).find(|&x| !used[x]) else {
            return 0;
        };
        used[v] = true;
        let mut best = go(g, v + 1, used);
        for &w in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                best = best.max(1 + go(g, v + 1, used));
                used[w] = false;
            }
        }
        used[v] = false;
        best
    }
    go(g, 0, &mut vec![false; g.num_vertices()])
}

#[test]
fn agrees_with_exhaustive_search_on_random_graphs() {
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..400 {
        let n = r.gen_range(1..=11);
        let p = r.gen_range(0.1..0.7);
        let mut e = vec![];
        for a in 0..n {
            for b in a + 1..n {
                if r.gen_bool(p) {
                    e.push((a, b));
                }
            }
        }
        let g = Graph::from_edges(n, &e).unwrap();
        let m = maximum_matching(&g);
        assert!(m.is_valid_for(&g));
        assert_eq!(m.len(), brute_max(&g), "{e:?}");
        assert_eq!(perfect_matching(&g).is_ok(), 2 * brute_max(&g) == n);
    }
}

#[test]
fn odd_order_has_no_perfect_matching() {
    let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    assert_eq!(
        perfect_matching(&g).unwrap_err(),
        Error::NoPerfectMatching {
            matched: 2,
            vertices: 3
        }
    );
}
