//! Free noncommutative polynomials over `Q(q, eta)`.

mod alphabet;
mod order;
mod poly;
mod tensor;
mod word;

pub use alphabet::{Alphabet, Block, Generator, Letter};
pub use order::{CompositeOrder, OrderKey, OrderKind, SortKey};
pub use poly::NCPoly;
pub use tensor::{Tensor, TensorPoly};
pub use word::Word;

use std::cmp::Ordering;

use crate::error::Result;

pub fn compare(order: &CompositeOrder, w1: &Word, w2: &Word) -> Result<Ordering> {
    order.compare(w1, w2)
}

pub fn poly_mul(p1: &NCPoly, p2: &NCPoly) -> NCPoly {
    p1.mul(p2)
}

pub fn tensor_mul(t1: &TensorPoly, t2: &TensorPoly) -> TensorPoly {
    t1.mul(t2)
}
