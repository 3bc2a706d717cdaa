//! Exact computation with self-similar groups acting on rooted p-ary
//! trees: the GGS and EGS families, their finite level quotients, and the
//! structure of the kernel of the completion map.
//!
//! The crate is organized as:
//!
//! * [`gfp`] — GF(p) arithmetic and the circulant matrix A_alpha;
//! * [`tree`] — vertices, portraits, recursive tree automorphisms;
//! * [`words`] — group families, generator recursions, words and sections;
//! * [`quotient`] — finite level quotients as permutation groups with a
//!   base and strong generating set;
//! * [`kernel`] — the t_n sequence, index assignments satisfying the
//!   summation condition, and canonical kernel elements;
//! * [`verify`] — named verification suites with structured reports;
//! * [`cli`] — the command line front end.

pub mod cli;
pub mod error;
pub mod gfp;
pub mod kernel;
pub mod quotient;
pub mod tree;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
