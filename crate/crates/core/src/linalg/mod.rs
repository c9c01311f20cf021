//! LU factorisation and the solvers built on it.

mod lu;

pub use lu::{det, inv, inv_with, lu_decompose, lu_decompose_with, solve_gauss, solve_gauss_with};
pub use lu::{LuDecomposition, PivotPolicy};

pub(crate) use lu::lu_with_pivot_floor;
