//! Degree-1 del Pezzo surfaces over finite fields: blow-up construction,
//! weighted sextic models, point counts, and the E8 lattice they act on.

pub mod assemble;
pub mod catalog;
pub mod cli;
pub mod count;
pub mod e8;
pub mod ff;
pub mod geom;
pub mod io;
pub mod linalg;
pub mod linsys;
pub mod sextic;
