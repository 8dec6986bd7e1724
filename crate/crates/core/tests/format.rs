use hamtet::corpus::{forced_instance, sphere_points};
use hamtet::format::{parse_mesh, parse_points, write_mesh, write_points};
use hamtet::pipeline::hamiltonian_tetrahedralization;
use hamtet::verify::{verify_certificate, verify_mesh};
use hamtet::Error;

#[test]
fn mesh_round_trip_is_exact() {
    for pts in [sphere_points(30, 2), forced_instance(4, 2, 3).unwrap()] {
        let t = hamiltonian_tetrahedralization(&pts).unwrap();
        let text = write_mesh(&t.mesh, Some(&t.certificate), Some(&t.stats));
        let back = parse_mesh(&text).unwrap();
        assert_eq!(back.mesh.vertices(), t.mesh.vertices());
        assert_eq!(back.mesh.live().collect::<Vec<_>>(), t.mesh.live().collect::<Vec<_>>());
        assert_eq!(back.certificate.as_ref(), Some(&t.certificate));
        assert_eq!(back.stats.as_ref(), Some(&t.stats));
        assert_eq!(
            write_mesh(&back.mesh, back.certificate.as_ref(), back.stats.as_ref()),
            text
        );
        assert!(verify_mesh(&pts, &back.mesh).all_ok());
        assert!(verify_certificate(&back.mesh, back.certificate.as_ref().unwrap()).ok());
    }
}

#[test]
fn points_round_trip_is_exact() {
    let pts = sphere_points(50, 9);
    assert_eq!(parse_points(&write_points(&pts)).unwrap(), pts);
}

#[test]
fn mesh_errors_have_line_numbers() {
    let text = "[vertices]\n0 0 0 0 exterior\n1 1 0 0 nowhere\n";
    assert!(matches!(parse_mesh(text), Err(Error::Parse { line: 3, .. })));
    assert!(matches!(parse_mesh("0 1 2 3 4\n"), Err(Error::Parse { line: 1, .. })));
    assert!(matches!(parse_mesh("[faces]\n"), Err(Error::Parse { line: 1, .. })));
}
