use super::matrix::{c64, hermitian_deviation, hermitian_part, CMatrix};
use crate::{tol, Error, Result};

/// One distinct eigenvalue with the orthogonal projector onto its eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralComponent {
    pub value: f64,
    pub projector: CMatrix,
}

impl SpectralComponent {
    pub fn rank(&self) -> usize {
        self.projector.trace().re.round() as usize
    }
}

/// Eigenvalues (ascending) and the matching unitary of column eigenvectors.
///
/// Only the Hermitian part of `h` is used; callers validate Hermiticity.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = hermitian_part(h).symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(h.nrows(), h.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Decompose a Hermitian matrix as `Σ_k λ_k Π_k` over its distinct eigenvalues.
///
/// Sorted eigenvalues closer than `group_tol` to their predecessor join the
/// same group; the group value is the mean of its members. Components are
/// returned in ascending order of eigenvalue.
pub fn spectral_decompose(h: &CMatrix, group_tol: f64) -> Result<Vec<SpectralComponent>> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.nrows(),
            cols: h.ncols(),
        });
    }
    let deviation = hermitian_deviation(h);
    if deviation > tol::HERMITIAN_INPUT {
        return Err(Error::NotHermitian { deviation });
    }
    if !(group_tol >= 0.0) {
        return Err(Error::OutOfDomain {
            what: "group_tol",
            value: group_tol,
        });
    }

    let dim = h.nrows();
    let (values, vectors) = hermitian_eigen(h);

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for k in 0..values.len() {
        match groups.last_mut() {
            Some(g) if values[k] - values[*g.last().unwrap()] <= group_tol => g.push(k),
            _ => groups.push(vec![k]),
        }
    }

    Ok(groups
        .into_iter()
        .map(|members| {
            let value = members.iter().map(|&k| values[k]).sum::<f64>() / members.len() as f64;
            let mut projector = CMatrix::zeros(dim, dim);
            for &k in &members {
                let v = vectors.column(k);
                projector += v * v.adjoint();
            }
            SpectralComponent { value, projector }
        })
        .collect())
}

/// `Σ_k λ_k Π_k`.
pub fn reconstruct(components: &[SpectralComponent]) -> CMatrix {
    let dim = components.first().map_or(0, |c| c.projector.nrows());
    components.iter().fold(CMatrix::zeros(dim, dim), |acc, c| {
        acc + &c.projector * c64(c.value, 0.0)
    })
}
