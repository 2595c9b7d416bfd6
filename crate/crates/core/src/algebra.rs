/// Operations of a skew Boolean algebra on some carrier.
///
/// Implemented by the concrete models (primitive algebras, orthosums, free
/// algebras, set and partial-function models) so that terms and law checks
/// can run against any of them.
pub trait SkewBoolean {
    type Element: Clone;

    fn zero(&self) -> Self::Element;
    fn meet(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;
    fn join(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;
    fn diff(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;
}

/// Natural partial order: `x ≤ y` iff `x ∧ y = x = y ∧ x`.
pub fn natural_leq<A>(algebra: &A, x: &A::Element, y: &A::Element) -> bool
where
    A: SkewBoolean + ?Sized,
    A::Element: PartialEq,
{
    algebra.meet(x, y) == *x && algebra.meet(y, x) == *x
}

/// Natural preorder: `x ⪯ y` iff `x ∧ y ∧ x = x`.
pub fn natural_preceq<A>(algebra: &A, x: &A::Element, y: &A::Element) -> bool
where
    A: SkewBoolean + ?Sized,
    A::Element: PartialEq,
{
    algebra.meet(&algebra.meet(x, y), x) == *x
}
