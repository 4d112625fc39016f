use core::fmt;

/// Which result produced a [`BoundInterval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundSource {
    /// Degree-based bounds from the orthogonal degree vector and `γ₂`, `γₙ`.
    DegreeBounds,
    /// `K(G′)/(1+ε) ≤ K(G) ≤ (1+ε)K(G′)`.
    DirectSparsification,
    /// Envelope of `K″` around `K`.
    KDoublePrimeEnvelope,
    /// Envelope of `K′` around `K`.
    KPrimeEnvelope,
    /// Cauchy interlacing with a principal submatrix of the normalized adjacency.
    PrincipalSubmatrix,
    /// Interlacing with the quotient matrix of a vertex partition.
    QuotientMatrix,
    /// Normalized-Laplacian edge interlacing after deleting edges.
    EdgeDeletion,
}

impl BoundSource {
    pub fn name(self) -> &'static str {
        match self {
            BoundSource::DegreeBounds => "degree-bounds",
            BoundSource::DirectSparsification => "direct-sparsification",
            BoundSource::KDoublePrimeEnvelope => "k-double-prime-envelope",
            BoundSource::KPrimeEnvelope => "k-prime-envelope",
            BoundSource::PrincipalSubmatrix => "principal-submatrix",
            BoundSource::QuotientMatrix => "quotient-matrix",
            BoundSource::EdgeDeletion => "edge-deletion",
        }
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Closed interval `[lower, upper]` tagged with the result that produced it.
///
/// `conditional` is set when the hypothesis of that result (for instance a
/// verified ε-approximation) was not confirmed, so the interval is reported
/// but carries no guarantee.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInterval {
    pub lower: f64,
    pub upper: f64,
    pub source: BoundSource,
    pub conditional: bool,
}

impl BoundInterval {
    pub fn new(lower: f64, upper: f64, source: BoundSource) -> Self {
        debug_assert!(
            lower <= upper + 1e-9 * (1.0 + upper.abs()),
            "inverted interval [{lower}, {upper}] from {source}"
        );
        Self {
            lower,
            upper,
            source,
            conditional: false,
        }
    }

    pub fn conditional(mut self, conditional: bool) -> Self {
        self.conditional = conditional;
        self
    }

    /// `lower - slack ≤ x ≤ upper + slack`.
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.lower - slack <= x && x <= self.upper + slack
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}
