//! Pointer chasing, set chasing and the operators built on top of them.
//!
//! Player `i + 1` holds `funcs[i]`; chasing starts from element `0` and
//! applies `funcs[p - 1]` first and `funcs[0]` last. A game with `p = 1` is
//! degenerate (a single player can answer alone) but is supported as is.

use std::collections::BTreeSet;

use crate::{Error, Result};

mod sample;
mod text;

pub use sample::{
    sample_bounded_load_function, sample_set_function, sample_uniform_function,
    sample_uniform_intersect_sc, sample_uniform_lpce, sample_uniform_or_lpce, sample_uniform_pc,
    sample_uniform_permutation,
};
pub use text::GameInstance;

/// A finite subset of `[0, n)`, iterated in ascending order.
pub type IndexSet = BTreeSet<usize>;

/// A total function `[0, n) -> [0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionTable {
    image: Vec<usize>,
}

impl FunctionTable {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::domain("function table must have n >= 1"));
        }
        if let Some((x, &y)) = image.iter().enumerate().find(|(_, &y)| y >= n) {
            return Err(Error::domain(format!("f({x}) = {y} is outside [0, {n})")));
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: usize) -> Self {
        assert!(value < n, "constant {value} outside [0, {n})");
        Self {
            image: vec![value; n],
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Number of preimages of every point.
    pub fn preimage_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n()];
        for &y in &self.image {
            counts[y] += 1;
        }
        counts
    }

    /// Largest preimage class.
    pub fn max_load(&self) -> usize {
        self.preimage_counts().into_iter().max().unwrap_or(0)
    }

    /// True iff some point has at least `r` preimages.
    pub fn is_r_non_injective(&self, r: usize) -> bool {
        assert!(r >= 1, "non-injectivity threshold must be positive");
        self.max_load() >= r
    }

    /// The singleton set function `x -> {f(x)}`.
    pub fn to_set_function(&self) -> SetFunctionTable {
        SetFunctionTable {
            image: self.image.iter().map(|&y| IndexSet::from([y])).collect(),
        }
    }
}

/// A total function `[0, n) -> subsets of [0, n)`. Empty images are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFunctionTable {
    image: Vec<IndexSet>,
}

impl SetFunctionTable {
    pub fn new(image: Vec<IndexSet>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::domain("set function table must have n >= 1"));
        }
        for (x, set) in image.iter().enumerate() {
            if let Some(&y) = set.iter().next_back().filter(|&&y| y >= n) {
                return Err(Error::domain(format!("f({x}) contains {y}, outside [0, {n})")));
            }
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        FunctionTable::identity(n).to_set_function()
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[IndexSet] {
        &self.image
    }

    pub fn get(&self, x: usize) -> &IndexSet {
        &self.image[x]
    }

    /// Sum of image sizes, i.e. the number of layer edges this table induces.
    pub fn multiplicity(&self) -> usize {
        self.image.iter().map(BTreeSet::len).sum()
    }

    /// Union of `f(x)` over `x` in `s`.
    pub fn vec_apply(&self, s: &IndexSet) -> Result<IndexSet> {
        if let Some(&x) = s.iter().next_back().filter(|&&x| x >= self.n()) {
            return Err(Error::domain(format!("element {x} outside [0, {})", self.n())));
        }
        Ok(self.apply_unchecked(s))
    }

    fn apply_unchecked(&self, s: &IndexSet) -> IndexSet {
        s.iter().flat_map(|&x| self.image[x].iter().copied()).collect()
    }
}

/// Free-function spelling of [`SetFunctionTable::vec_apply`].
pub fn vec_apply(f: &SetFunctionTable, s: &IndexSet) -> Result<IndexSet> {
    f.vec_apply(s)
}

fn check_layers<T>(funcs: &[T], n_of: impl Fn(&T) -> usize) -> Result<usize> {
    let first = funcs
        .first()
        .ok_or_else(|| Error::domain("a chasing instance needs p >= 1 tables"))?;
    let n = n_of(first);
    if funcs.iter().any(|f| n_of(f) != n) {
        return Err(Error::domain("all tables of an instance must share n"));
    }
    Ok(n)
}

/// An instance of pointer chasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PcInstance {
    funcs: Vec<FunctionTable>,
}

impl PcInstance {
    pub fn new(funcs: Vec<FunctionTable>) -> Result<Self> {
        check_layers(&funcs, FunctionTable::n)?;
        Ok(Self { funcs })
    }

    pub fn identity(n: usize, p: usize) -> Self {
        Self {
            funcs: vec![FunctionTable::identity(n); p],
        }
    }

    pub fn n(&self) -> usize {
        self.funcs[0].n()
    }

    pub fn p(&self) -> usize {
        self.funcs.len()
    }

    pub fn funcs(&self) -> &[FunctionTable] {
        &self.funcs
    }

    pub fn into_funcs(self) -> Vec<FunctionTable> {
        self.funcs
    }

    /// The chain `0, funcs[p-1](0), ..., eval()`, innermost first.
    pub fn chain(&self) -> Vec<usize> {
        let mut chain = Vec::with_capacity(self.p() + 1);
        let mut x = 0;
        chain.push(x);
        for f in self.funcs.iter().rev() {
            x = f.apply(x);
            chain.push(x);
        }
        chain
    }

    /// `funcs[0](funcs[1](... funcs[p-1](0) ...))`.
    pub fn eval(&self) -> usize {
        self.funcs.iter().rev().fold(0, |x, f| f.apply(x))
    }

    pub fn any_r_non_injective(&self, r: usize) -> bool {
        self.funcs.iter().any(|f| f.is_r_non_injective(r))
    }

    /// The set chasing instance with singleton images.
    pub fn to_set_chasing(&self) -> ScInstance {
        ScInstance {
            funcs: self.funcs.iter().map(FunctionTable::to_set_function).collect(),
        }
    }
}

pub fn eval_pc(inst: &PcInstance) -> usize {
    inst.eval()
}

/// Equality of two pointer chasing outputs.
pub fn eval_equal_pc(left: &PcInstance, right: &PcInstance) -> Result<bool> {
    if left.n() != right.n() || left.p() != right.p() {
        return Err(Error::domain(format!(
            "EQUAL needs matching shapes, got (n={}, p={}) vs (n={}, p={})",
            left.n(),
            left.p(),
            right.n(),
            right.p()
        )));
    }
    Ok(left.eval() == right.eval())
}

/// An instance of set chasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScInstance {
    funcs: Vec<SetFunctionTable>,
}

impl ScInstance {
    pub fn new(funcs: Vec<SetFunctionTable>) -> Result<Self> {
        check_layers(&funcs, SetFunctionTable::n)?;
        Ok(Self { funcs })
    }

    pub fn identity(n: usize, p: usize) -> Self {
        Self {
            funcs: vec![SetFunctionTable::identity(n); p],
        }
    }

    pub fn n(&self) -> usize {
        self.funcs[0].n()
    }

    pub fn p(&self) -> usize {
        self.funcs.len()
    }

    pub fn funcs(&self) -> &[SetFunctionTable] {
        &self.funcs
    }

    /// Reachable sets layer by layer: `[{0}, funcs[p-1]({0}), ..., eval()]`.
    pub fn layers(&self) -> Vec<IndexSet> {
        let mut out = Vec::with_capacity(self.p() + 1);
        let mut cur = IndexSet::from([0]);
        out.push(cur.clone());
        for f in self.funcs.iter().rev() {
            cur = f.apply_unchecked(&cur);
            out.push(cur.clone());
        }
        out
    }

    pub fn eval(&self) -> IndexSet {
        self.funcs
            .iter()
            .rev()
            .fold(IndexSet::from([0]), |s, f| f.apply_unchecked(&s))
    }
}

pub fn eval_sc(inst: &ScInstance) -> IndexSet {
    inst.eval()
}

/// Limited pointer chasing equality: EQUAL(PC), forced to 1 when any table is
/// `r`-non-injective.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LpceInstance {
    left: PcInstance,
    right: PcInstance,
    r: usize,
}

impl LpceInstance {
    pub fn new(left: PcInstance, right: PcInstance, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::domain("non-injectivity threshold r must be >= 1"));
        }
        if left.n() != right.n() || left.p() != right.p() {
            return Err(Error::domain("LPCE sides must share n and p"));
        }
        Ok(Self { left, right, r })
    }

    pub fn left(&self) -> &PcInstance {
        &self.left
    }

    pub fn right(&self) -> &PcInstance {
        &self.right
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn p(&self) -> usize {
        self.left.p()
    }

    /// True iff any of the `2p` tables is `r`-non-injective.
    pub fn has_non_injective(&self) -> bool {
        self.left.any_r_non_injective(self.r) || self.right.any_r_non_injective(self.r)
    }

    pub fn equal(&self) -> bool {
        self.left.eval() == self.right.eval()
    }

    pub fn eval(&self) -> bool {
        self.has_non_injective() || self.equal()
    }
}

pub fn eval_lpce(inst: &LpceInstance) -> bool {
    inst.eval()
}

/// OR of `t` LPCE instances sharing `n`, `p` and `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrLpceInstance {
    items: Vec<LpceInstance>,
}

impl OrLpceInstance {
    pub fn new(items: Vec<LpceInstance>) -> Result<Self> {
        let first = items
            .first()
            .ok_or_else(|| Error::domain("OR_t needs t >= 1 items"))?;
        let shape = (first.n(), first.p(), first.r());
        if items.iter().any(|it| (it.n(), it.p(), it.r()) != shape) {
            return Err(Error::domain("OR_t items must share n, p and r"));
        }
        Ok(Self { items })
    }

    pub fn items(&self) -> &[LpceInstance] {
        &self.items
    }

    pub fn t(&self) -> usize {
        self.items.len()
    }

    pub fn n(&self) -> usize {
        self.items[0].n()
    }

    pub fn p(&self) -> usize {
        self.items[0].p()
    }

    pub fn r(&self) -> usize {
        self.items[0].r()
    }

    pub fn has_non_injective(&self) -> bool {
        self.items.iter().any(LpceInstance::has_non_injective)
    }

    /// OR of plain pointer chasing equality, ignoring non-injectivity.
    pub fn any_equal(&self) -> bool {
        self.items.iter().any(LpceInstance::equal)
    }

    pub fn eval(&self) -> bool {
        self.items.iter().any(LpceInstance::eval)
    }
}

pub fn eval_or_lpce(inst: &OrLpceInstance) -> bool {
    inst.eval()
}

/// Two set chasing instances; the answer is whether their outputs intersect.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectScInstance {
    left: ScInstance,
    right: ScInstance,
}

impl IntersectScInstance {
    pub fn new(left: ScInstance, right: ScInstance) -> Result<Self> {
        if left.n() != right.n() || left.p() != right.p() {
            return Err(Error::domain("INTERSECT sides must share n and p"));
        }
        Ok(Self { left, right })
    }

    pub fn identity(n: usize, p: usize) -> Self {
        Self {
            left: ScInstance::identity(n, p),
            right: ScInstance::identity(n, p),
        }
    }

    pub fn left(&self) -> &ScInstance {
        &self.left
    }

    pub fn right(&self) -> &ScInstance {
        &self.right
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn p(&self) -> usize {
        self.left.p()
    }

    pub fn intersection(&self) -> IndexSet {
        let l = self.left.eval();
        let r = self.right.eval();
        l.intersection(&r).copied().collect()
    }

    pub fn eval(&self) -> bool {
        let r = self.right.eval();
        self.left.eval().iter().any(|x| r.contains(x))
    }
}

pub fn eval_intersect_sc(inst: &IntersectScInstance) -> bool {
    inst.eval()
}
