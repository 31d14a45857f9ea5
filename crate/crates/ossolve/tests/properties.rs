use num_complex::Complex64;
use ossolve::greens::{GreensKernel, KernelDomain};
use ossolve::longwave::{verify_identity, Identity};
use ossolve::meanflow::FlowConfig;
use ossolve::roots::newton;
use ossolve::shortwave::{steady_eigen_linear, steady_linear_function};
use ossolve::specfun::{airy, oracle_pfq, pfq, HypergeometricParams};
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn domain() -> impl Strategy<Value = KernelDomain> {
    prop_oneof![Just(KernelDomain::SemiInfinite), Just(KernelDomain::Infinite)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_continuous_with_unit_jump(
        dom in domain(), r in 0.5f64..20.0, kr in 0.05f64..3.0, ki in -3.0f64..3.0, xi in 0.2f64..3.0,
    ) {
        let g = GreensKernel::new(dom, r, c(kr, ki)).unwrap();
        let at = g.eval(xi, xi).unwrap();
        let near = g.eval(xi.next_up(), xi).unwrap();
        prop_assert!((near - at).norm() <= 1e-12 * at.norm());
        let jump = g.eval_dy(xi, xi, 1.0).unwrap() - g.eval_dy(xi, xi, -1.0).unwrap();
        prop_assert!((jump + 1.0).norm() <= 1e-10, "jump {jump}");
    }

    #[test]
    fn kernel_is_symmetric(
        dom in domain(), r in 0.5f64..20.0, kr in 0.05f64..3.0, ki in -3.0f64..3.0,
        y in 0.0f64..4.0, xi in 0.0f64..4.0,
    ) {
        let g = GreensKernel::new(dom, r, c(kr, ki)).unwrap();
        let (a, b) = (g.eval(y, xi).unwrap(), g.eval(xi, y).unwrap());
        prop_assert!((a - b).norm() <= 1e-13 * a.norm().max(1e-300));
    }

    #[test]
    fn identities_hold(y in 0.05f64..3.0, mag in 0.0f64..3.0, arg in -PI..PI) {
        let s = Complex64::from_polar(mag, arg);
        for id in [Identity::Double0F1, Identity::DoubleWeighted0F1, Identity::Weighted1F1] {
            let res = verify_identity(id, y, s).unwrap();
            prop_assert!(res <= 1e-8, "{id:?} at y={y}, s={s}: {res:e}");
        }
    }

    #[test]
    fn pfq_matches_oracle(
        upper in prop::collection::vec((-2.0f64..3.0, -1.0f64..1.0), 0..=2),
        lower in prop::collection::vec((0.1f64..3.0, -1.0f64..1.0), 1..=2),
        rad in 0.0f64..0.9, arg in -PI..PI,
    ) {
        let z = Complex64::from_polar(if upper.len() > lower.len() { rad } else { 10.0 * rad }, arg);
        let to_c = |v: &[(f64, f64)]| v.iter().map(|&(a, b)| c(a, b)).collect::<Vec<_>>();
        let p = HypergeometricParams::new(to_c(&upper), to_c(&lower)).unwrap();
        let want = oracle_pfq(&p, z, 30).unwrap();
        let got = pfq(&p, z).unwrap();
        prop_assert!((got - want).norm() <= 1e-10 * want.norm().max(1e-300), "{got} vs {want}");
    }

    #[test]
    fn airy_wronskian(mag in 0.0f64..10.0, arg in -PI..PI) {
        let z = Complex64::from_polar(mag, arg);
        let a = airy(z).unwrap();
        let (p1, p2) = (a.ai * a.bip, a.aip * a.bi);
        let scale = (PI * (p1.norm() + p2.norm())).max(1.0);
        prop_assert!(((p1 - p2) * PI - 1.0).norm() <= 1e-10 * scale);
    }

    #[test]
    fn newton_returns_to_steady_root(
        n in 1usize..8, r in 2.0f64..40.0, chi in 10.0f64..1e4, dr in -0.05f64..0.05, di in -0.05f64..0.05,
    ) {
        let cfg = FlowConfig::from_chi(r, chi).unwrap();
        let root = steady_eigen_linear(n, 1.0, 0.0, &cfg).unwrap().pair.k;
        let seed = root * c(1.0 + dr, di);
        let tol = |k: Complex64| 1e-12 * (1.0 + k.norm_sqr() / chi);
        let found = newton(|k| Ok(steady_linear_function(n, k, 1.0, 0.0, &cfg)), seed, tol, 60).unwrap();
        prop_assert!((found.root - root).norm() <= 1e-8 * root.norm(), "{} vs {root}", found.root);
    }
}
