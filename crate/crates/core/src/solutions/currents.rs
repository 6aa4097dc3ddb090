use crate::error::Result;
use crate::solutions::fields::{Bispinor, RSVector};
use crate::solutions::massless::{basis_eta_bar, psi_spinor};
use crate::spacetime::{SpacetimePoint, C64};
use crate::spinor::{lightlike_vector, FourVector, Mat2, Spinor};

fn sigma_expectation(v: [C64; 2]) -> [f64; 3] {
    [1, 2, 3].map(|i| {
        let m = Mat2::pauli(i);
        let w = m.apply(v);
        (v[0].conj() * w[0] + v[1].conj() * w[1]).re
    })
}

/// `j = (|φ|² + |χ|², φ†σφ − χ†σχ)`, the conserved Dirac current.
pub fn dirac_current(psi: &Bispinor) -> FourVector {
    let sp = sigma_expectation(psi.phi);
    let sc = sigma_expectation(psi.chi);
    FourVector::real([psi.norm_density(), sp[0] - sc[0], sp[1] - sc[1], sp[2] - sc[2]])
}

/// `j^μ = φ̄ g^μ φ` of a Weyl spinor.
pub fn weyl_current(phi: &Spinor) -> FourVector {
    lightlike_vector(phi)
}

/// Energy density `(E² + B²)/2` and Poynting vector `E × B`.
pub fn maxwell_stress(f: &RSVector) -> (f64, [f64; 3]) {
    let e = f.electric();
    let b = f.magnetic();
    let u = 0.5 * (e.iter().map(|v| v * v).sum::<f64>() + b.iter().map(|v| v * v).sum::<f64>());
    let s = [e[1] * b[2] - e[2] * b[1], e[2] * b[0] - e[0] * b[2], e[0] * b[1] - e[1] * b[0]];
    (u, s)
}

/// Hopfion velocity `v = l/l⁰` with `l^μ` the null vector of `ψ_A` (`η^Ȧ = (1, 0)`).
pub fn hopfion_velocity(x: &SpacetimePoint, a: f64) -> Result<[f64; 3]> {
    let psi = psi_spinor(x, &basis_eta_bar(1)?, a)?;
    let l = lightlike_vector(&psi).re();
    Ok([l[1] / l[0], l[2] / l[0], l[3] / l[0]])
}
