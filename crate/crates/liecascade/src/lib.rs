//! Exact root-system combinatorics for pairs of commuting torus
//! automorphisms: Weyl actions, Dynkin diagram foldings, strongly orthogonal
//! cascades, normal forms, parity and lifting criteria, and a certificate
//! engine that replays the isotropy-formality case analysis with
//! machine-checked witnesses.
//!
//! All arithmetic is exact: roots are integer vectors over the simple-root
//! basis and every pairing is an integer or a rational. The core is generic
//! over the integer scalar (see [`scalar::Scalar`]); the aliases below fix
//! `i64`, which is ample for every rank this crate supports.
//!
//! ```
//! use liecascade::{RootSystem, SystemType};
//!
//! let d4 = RootSystem::build(SystemType::parse("D4")?)?;
//! assert_eq!(d4.num_roots(), 24);
//!
//! let cascade = liecascade::cascade::kostant_cascade(&d4)?;
//! assert_eq!(cascade.len(), 4);
//! for (i, a) in cascade.roots().iter().enumerate() {
//!     for b in cascade.roots().iter().skip(i + 1) {
//!         assert!(d4.is_strongly_orthogonal(a, b)?);
//!     }
//! }
//! # Ok::<(), liecascade::Error>(())
//! ```

pub mod cascade;
pub mod certifier;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod rootsys;
pub mod scalar;
pub mod torusauto;
pub mod verify;
pub mod weyl;

/// Default integer scalar.
pub type Coeff = i64;
/// Exact rational over [`Coeff`].
pub type Rat = scalar::Rat<Coeff>;

pub type Root = rootsys::Root<Coeff>;
pub type RootSystem = rootsys::RootSystem<Coeff>;
pub type LatticeMap = weyl::LatticeMap<Coeff>;
pub type Subsystem = weyl::Subsystem<Coeff>;
pub type OrthoSet = cascade::OrthoSet<Coeff>;
pub type RationalSubspace = cascade::RationalSubspace<Coeff>;
pub type TorusAut = torusauto::TorusAut<Coeff>;
pub type PairSetup = torusauto::PairSetup<Coeff>;
pub type Certificate = certifier::Certificate<Coeff>;

pub use error::{Error, Result};
pub use rootsys::{Family, SystemType, TypeSymbol};
pub use weyl::WeylWord;
