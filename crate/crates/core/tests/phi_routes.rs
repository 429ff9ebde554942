use satake::kernels::transform::{phi_w6, phi_w6_direct, HatOpts, HatTransform, PhiOpts};
use satake::kernels::{ContourSpec, TestFunctionSpec};

// Small T keeps the spectral lattice short enough for a Mellin-Barnes
// evaluation at every node.
#[test]
fn transform_route_matches_spectral_route() {
    let spec = TestFunctionSpec {
        t: 2.0,
        nu0: [1.0, 0.5],
        ..TestFunctionSpec::default()
    };
    let y = [0.5, -2.0];
    let hat = HatTransform::new(
        &spec,
        &HatOpts {
            support_level: 1e-9,
            ..HatOpts::default()
        },
    )
    .unwrap();
    let via_hat = phi_w6(&hat, y, &PhiOpts::default()).unwrap();
    let direct = phi_w6_direct(&spec, y, 3.0, 1.5, &ContourSpec::default().coarse()).unwrap();
    let rel = (via_hat.value - direct.value).norm() / direct.value.norm();
    assert!(rel < 0.05, "{} vs {} ({})", via_hat.value, direct.value, rel);
}

#[test]
fn transform_is_hermitian() {
    let hat = HatTransform::new(&TestFunctionSpec::default(), &HatOpts::default()).unwrap();
    for x in [[0.01, 0.02], [0.1, -0.05], [-0.2, 0.13]] {
        let a = hat.eval(x);
        let b = hat.eval([-x[0], -x[1]]);
        assert!((a.conj() - b).norm() < 1e-12 * hat.peak().norm());
    }
}
