use super::GHOST;
use crate::kernel::{reconstruct, reconstruct_mirrored, SchemeConfig, StencilWindow};

/// Interface fluxes along one line of split scalar fluxes.
///
/// `plus` and `minus` hold the positive and negative parts on the `n`
/// interior points plus three ghosts per side.  Entry `k` of the result is
/// the flux through the face between interior points `k - 1` and `k`, so
/// there are `n + 1` of them.
pub fn interface_fluxes(plus: &[f64], minus: &[f64], scheme: &SchemeConfig) -> Vec<f64> {
    let mut out = vec![0.0; plus.len() - 2 * GHOST + 1];
    interface_fluxes_into(plus, minus, scheme, &mut out);
    out
}

pub(crate) fn interface_fluxes_into(plus: &[f64], minus: &[f64], scheme: &SchemeConfig, out: &mut [f64]) {
    assert_eq!(plus.len(), minus.len());
    assert_eq!(out.len() + 2 * GHOST - 1, plus.len());
    for (k, o) in out.iter_mut().enumerate() {
        // The face sits between line entries g and g + 1.
        let g = k + GHOST - 1;
        let wp = StencilWindow([plus[g - 2], plus[g - 1], plus[g], plus[g + 1], plus[g + 2]]);
        let wm = StencilWindow([minus[g - 1], minus[g], minus[g + 1], minus[g + 2], minus[g + 3]]);
        *o = reconstruct(&wp, scheme) + reconstruct_mirrored(&wm, scheme);
    }
}
