//! Exact cohomology computations for generalized Kummer varieties.
//!
//! - [`partitions`]: partitions of `n+1` indexing the Hilbert–Chow strata.
//! - [`graded`]: bigraded dimension tables and their algebra.
//! - [`kummer`]: the partition decomposition of `H*(A × Kum_n(A))`, the
//!   Kummer Betti/Hodge tables, their `Γ`-invariant parts and the degree
//!   bound report.
//! - [`mukai`]: the Mukai lattice of an abelian surface.
//! - [`clifford`] and [`smith`]: the Clifford action on `Λ*H¹(A,Z)` and the
//!   cokernel of `m_v`.

pub mod clifford;
pub mod graded;
pub mod kummer;
pub mod mukai;
pub mod partitions;
pub mod smith;

pub use clifford::{CliffordError, Spinor, VVector};
pub use graded::{complex_torus_table, Bidegree, BigradedTable, GradedError};
pub use kummer::{GsSummand, Isotype, KummerError, KummerTables, LscReport};
pub use mukai::MukaiVector;
pub use partitions::{Partition, PartitionError};
pub use smith::{IntegerMatrix, SmithDecomposition};
