use bpvoa_exact::RatFunc;

use crate::algebra::{Decomposition, VertexAlgebra, VertexModule};
use crate::combo::Combo;

/// `Y(x⊗y, z) = Y(x, z) ⊗ Y(y, z)` acting on a tensor product of modules.
pub struct Tensor<'a, A: ?Sized, B: ?Sized> {
    pub left: &'a A,
    pub right: &'a B,
}

impl<'a, A: ?Sized, B: ?Sized> Tensor<'a, A, B> {
    pub fn new(left: &'a A, right: &'a B) -> Self {
        Tensor { left, right }
    }
}

/// `Σ a_i b_j (x_i ⊗ y_j)`.
pub fn tensor<X: Ord + Clone, Y: Ord + Clone>(a: &Combo<X>, b: &Combo<Y>) -> Combo<(X, Y)> {
    let mut out = Combo::zero();
    for (x, c) in a.iter() {
        for (y, d) in b.iter() {
            out.add_term((x.clone(), y.clone()), c * d);
        }
    }
    out
}

impl<A: VertexModule + ?Sized, B: VertexModule + ?Sized> VertexModule for Tensor<'_, A, B> {
    type Elem = (A::Elem, B::Elem);
    type Vector = (A::Vector, B::Vector);

    fn act(&self, (x, y): &Self::Elem, n: i64, (u, v): &Self::Vector) -> Combo<Self::Vector> {
        let ma = self.left.max_index(x, u);
        let mb = self.right.max_index(y, v);
        let mut out = Combo::zero();
        for p in (n - 1 - mb)..=ma {
            let l = self.left.act(x, p, u);
            if l.is_zero() {
                continue;
            }
            let r = self.right.act(y, n - 1 - p, v);
            if r.is_zero() {
                continue;
            }
            out.add_scaled(&tensor(&l, &r), &RatFunc::one());
        }
        out
    }

    fn max_index(&self, (x, y): &Self::Elem, (u, v): &Self::Vector) -> i64 {
        self.left.max_index(x, u) + self.right.max_index(y, v) + 1
    }
}

impl<A, B> VertexAlgebra for Tensor<'_, A, B>
where
    A: VertexAlgebra + ?Sized,
    B: VertexAlgebra + ?Sized,
{
    fn vacuum(&self) -> Self::Elem {
        (self.left.vacuum(), self.right.vacuum())
    }

    fn derivative(&self, (x, y): &Self::Elem) -> Combo<Self::Elem> {
        let dx = tensor(&self.left.derivative(x), &Combo::single(y.clone()));
        dx.add(&tensor(&Combo::single(x.clone()), &self.right.derivative(y)))
    }

    fn decompose(&self, a: &Self::Elem) -> Decomposition<Self::Elem> {
        if *a == self.vacuum() {
            Decomposition::Vacuum
        } else {
            Decomposition::Atom(a.clone())
        }
    }
}
