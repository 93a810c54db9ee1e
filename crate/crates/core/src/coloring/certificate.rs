use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{find_mono_clique, ColoringError, EdgeColoring, MonoClique};
use crate::rational::{format_rational, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("coloring has a monochromatic K_{} in color {}", .0.vertices.len(), .0.color)]
    MonochromaticCliqueExists(MonoClique),
    #[error("capacity claim has not been verified")]
    UnverifiedCapacity,
    #[error("capacity claim is for {claim} points, certificate asks for {requested}")]
    CapacityMismatch { claim: usize, requested: usize },
    #[error("digest mismatch: certificate has {expected}, coloring hashes to {actual}")]
    DigestMismatch { expected: String, actual: String },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// "At most `k` points of the circle are pairwise more than `eps` apart."
///
/// Only a passing capacity check can mark a claim verified; see
/// [`crate::verify::verify_capacity_circle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityClaim {
    k: usize,
    eps: Rational,
    verified: bool,
}

impl CapacityClaim {
    pub fn unverified(k: usize, eps: Rational) -> Self {
        CapacityClaim {
            k,
            eps,
            verified: false,
        }
    }

    pub(crate) fn verified(k: usize, eps: Rational) -> Self {
        CapacityClaim {
            k,
            eps,
            verified: true,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// `C_d(T,eps)=k`.
    pub fn describe(&self) -> String {
        capacity_text(self.k, &self.eps)
    }
}

fn capacity_text(k: usize, eps: &Rational) -> String {
    format!("C_d(T,{})={}", short(eps), k)
}

fn short(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format_rational(q)
    }
}

fn claim_text(k_plus_1: usize, colors: usize, vertices: usize) -> String {
    format!("R({k_plus_1},{colors}) > {vertices}")
}

/// Ramsey lower bound `R(k+1, colors) > vertices`, bound to one coloring by
/// its digest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RamseyCertificate {
    pub claim: String,
    pub k_plus_1: usize,
    pub colors: usize,
    pub vertices: usize,
    pub digest: String,
    pub capacity: String,
}

/// Issues a certificate after checking the coloring has no monochromatic
/// `K_{k+1}` and the capacity claim is verified and matches `k`.
pub fn emit_certificate(
    coloring: &EdgeColoring,
    k: usize,
    claim: &CapacityClaim,
) -> Result<RamseyCertificate, CertificateError> {
    if !claim.verified {
        return Err(CertificateError::UnverifiedCapacity);
    }
    if claim.k != k {
        return Err(CertificateError::CapacityMismatch {
            claim: claim.k,
            requested: k,
        });
    }
    if let Some(hit) = find_mono_clique(coloring, k + 1)? {
        return Err(CertificateError::MonochromaticCliqueExists(hit));
    }
    Ok(RamseyCertificate {
        claim: claim_text(k + 1, coloring.num_colors(), coloring.vertex_count()),
        k_plus_1: k + 1,
        colors: coloring.num_colors(),
        vertices: coloring.vertex_count(),
        digest: coloring.digest(),
        capacity: claim.describe(),
    })
}

/// Re-checks a certificate against the coloring it names.
///
/// A digest mismatch is an error. Otherwise the result is `true` only when
/// every field agrees with the coloring and no monochromatic `K_{k+1}`
/// exists.
pub fn verify_certificate(
    cert: &RamseyCertificate,
    coloring: &EdgeColoring,
) -> Result<bool, CertificateError> {
    let actual = coloring.digest();
    if actual != cert.digest {
        return Err(CertificateError::DigestMismatch {
            expected: cert.digest.clone(),
            actual,
        });
    }
    if cert.k_plus_1 < 3
        || cert.colors != coloring.num_colors()
        || cert.vertices != coloring.vertex_count()
        || cert.claim != claim_text(cert.k_plus_1, cert.colors, cert.vertices)
        || cert.capacity != capacity_text(cert.k_plus_1 - 1, &ratio(1, 3))
    {
        return Ok(false);
    }
    Ok(find_mono_clique(coloring, cert.k_plus_1)?.is_none())
}
