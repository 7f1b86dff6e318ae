use quiverdef::Field;
use quiverdef_bench::{d3r, module, random_matrix};

#[test]
fn fixtures_are_deterministic() {
    let f = Field::new(3).unwrap();
    assert_eq!(random_matrix(f, 20, 30, 4), random_matrix(f, 20, 30, 4));
    let a = d3r(Field::gf2());
    assert_eq!(a.dim(), 15);
    assert_eq!(module(&a, "delta*beta").dims(), &[1, 1, 1]);
}
