//! Gröbner bases for submodules of free modules over `Q[x1..xn]`.

mod buchberger;
mod mvec;
mod order;
mod submodule;

pub use buchberger::Groebner;
pub use mvec::MVec;
pub use order::{BaseOrder, ModuleOrder, Position};
pub use submodule::{canonical_vector, kernel_of_matrix, unit_vector, FreenessProbe, Presentation, Submodule, SATURATION_CAP};

#[cfg(test)]
mod tests;
