use crate::error::Result;
use crate::graph::{DegreeProfile, WeightedGraph};
use crate::interval::BoundInterval;
use crate::kemeny;
use crate::spectral::{GroupInverseMatrix, LaplacianSet, SpectrumSummary};

/// Everything derived once from a connected graph: matrices, spectra, the
/// group inverse and the degree profile.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph: WeightedGraph,
    pub laplacians: LaplacianSet,
    pub spectrum: SpectrumSummary,
    pub group_inverse: GroupInverseMatrix,
    pub degrees: DegreeProfile,
    kemeny: f64,
}

impl Analysis {
    /// Fails with [`crate::Error::Disconnected`] on disconnected input.
    pub fn new(g: &WeightedGraph) -> Result<Self> {
        if !g.is_connected() {
            return Err(crate::Error::Disconnected);
        }
        let laplacians = LaplacianSet::assemble(g)?;
        let spectrum = SpectrumSummary::compute(&laplacians)?;
        spectrum.require_connected()?;
        let group_inverse = GroupInverseMatrix::compute(&laplacians)?;
        let kemeny = kemeny::kemeny_eigen(&spectrum)?;
        Ok(Self {
            graph: g.clone(),
            degrees: g.degree_profile(),
            laplacians,
            spectrum,
            group_inverse,
            kemeny,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `K(G)` from the normalized Laplacian spectrum.
    pub fn kemeny(&self) -> f64 {
        self.kemeny
    }

    pub fn kemeny_group_inverse(&self) -> Result<f64> {
        kemeny::kemeny_group_inverse(&self.group_inverse, &self.degrees)
    }

    pub fn degree_bounds(&self) -> Result<BoundInterval> {
        kemeny::degree_bounds(&self.group_inverse, &self.degrees, &self.spectrum)
    }

    pub fn slightly_regular(&self) -> Result<kemeny::SlightlyRegular> {
        kemeny::slightly_regular_certificate(&self.laplacians, &self.degrees)
    }

    pub fn kemeny_star_star(&self) -> Result<f64> {
        kemeny::kemeny_star_star_from_parts(&self.laplacians, &self.spectrum, &self.degrees)
    }

    /// `(k̄/n)·R_G`.
    pub fn resistive_estimate(&self) -> Result<f64> {
        kemeny::resistive_estimate(&self.degrees, &self.spectrum)
    }

    /// `y = kᵀL^#k / vol`.
    pub fn y(&self) -> Result<f64> {
        kemeny::degree_quadratic_term(&self.group_inverse, &self.degrees)
    }
}
