use legendre_mm::legendre::divpoly::{division_polynomials, functional_equation_report};
use std::time::Instant;

#[test]
fn division_polynomials_up_to_twenty() {
    let t = Instant::now();
    for n in 1..=20u32 {
        let ab = division_polynomials(n).unwrap();
        assert_eq!(ab.0.deg_x(), Some(n * n));
        assert_eq!(ab.1.deg_x(), Some(n * n - 1));
        assert!(ab.0.is_monic_in_x());
        let r = functional_equation_report(n).unwrap();
        assert!(r.holds, "{r:?}");
        eprintln!("n={n} degL(A)={} degL(B)={} terms={} t={:?}", r.deg_lambda_a, r.deg_lambda_b, ab.0.len(), t.elapsed());
    }
}
