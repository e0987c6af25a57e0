//! Exact computations in the graded Hopf algebras of symplectic Jacobi diagrams:
//! the ordered algebra `A^<(H_Q)` and the symmetrized algebra `A(H_Q)` with its
//! star product, together with the degree-2 Torelli bracket analysis, the
//! closed-surface ideal, weight systems and the `Sp_2g` decomposition tools.

pub mod cache;
pub mod canonical;
pub mod closed;
pub mod diagram;
pub mod element;
pub mod enumerate;
pub mod hopf;
pub mod linalg;
pub mod parse;
pub mod quotient;
pub mod rep;
pub mod symplectic;
pub mod torelli;
pub mod weight;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use diagram::{Diagram, Label};
pub use element::Element;
pub use symplectic::{BasisVector, HVector, Kind, SpGenerator};

/// Exact rational scalars used everywhere in the kernel.
pub type Q = BigRational;

pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Renders a rational as `p/q` (denominator always shown).
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("label {label} is out of range for genus {genus}")]
    GenusRange { label: String, genus: usize },
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("operation needs an ordered diagram")]
    NotOrdered,
    #[error("ω-labeled legs must be expanded first")]
    OmegaLabel,
    #[error("invalid metrized Lie algebra: {0}")]
    InvalidLie(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("linear system has no solution: {0}")]
    Singular(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Resource limits shared by the enumeration and elimination stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_degree: usize,
    pub max_genus: usize,
    pub max_rows: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_degree: 3, max_genus: 4, max_rows: 200_000 }
    }
}

impl Caps {
    /// Defaults overridden by `JACOBI_MAX_DEGREE`, `JACOBI_MAX_GENUS`, `JACOBI_MAX_ROWS`.
    pub fn from_env() -> Self {
        let read = |name: &str, dflt: usize| {
            std::env::var(name).ok().and_then(|v| v.parse().ok()).unwrap_or(dflt)
        };
        let d = Caps::default();
        Caps {
            max_degree: read("JACOBI_MAX_DEGREE", d.max_degree),
            max_genus: read("JACOBI_MAX_GENUS", d.max_genus),
            max_rows: read("JACOBI_MAX_ROWS", d.max_rows),
        }
    }

    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::CapExceeded { what: "degree", value: degree, cap: self.max_degree });
        }
        Ok(())
    }

    pub fn check_genus(&self, genus: usize) -> Result<()> {
        if genus > self.max_genus {
            return Err(Error::CapExceeded { what: "genus", value: genus, cap: self.max_genus });
        }
        Ok(())
    }

    pub fn check_rows(&self, rows: usize) -> Result<()> {
        if rows > self.max_rows {
            return Err(Error::CapExceeded { what: "rows", value: rows, cap: self.max_rows });
        }
        Ok(())
    }
}
