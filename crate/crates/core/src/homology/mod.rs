//! The free resolution ZM[Σ₃] → ZM[Σ₂] → ZM[Σ₁] → ZM → Z of a convergent
//! monoid presentation, with its contracting homotopy.

mod export;
mod linear;
mod verify;

pub use export::{enumerate_monoid, integer_matrices, symbolic_matrices, write_matrices, IntMatrix, SymbolicMatrix};
pub use linear::{cell_name, show_module, show_ring, show_ring_terms, Cell, Lin, ModuleElt, MonoidElt, RingElt};
pub use verify::{sample_normal_forms, verify_identities, CheckStatus, IdentityCheck, IdentityReport, IDENTITY_KEYS};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::branchings::ConvergentPolygraph;
use crate::coherence::{boundary3, CoherentPresentation, ExprError, FillError, ThreeCellExpr};
use crate::presentation::{Polygraph, Word};
use crate::rewrite::{find_redexes, normalize, RewriteError, Strategy, TwoCellPath, ZigZag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("homology is only defined for monoid presentations")]
    NotMonoid,
    #[error("no coherent presentation: i3 needs the Squier completion")]
    NoCoherence,
    #[error("{0} applied to an element of the wrong degree")]
    WrongDegree(&'static str),
    #[error("monoid enumeration exceeds {0} elements")]
    BoundExceeded(usize),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Fill(#[from] FillError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("{0}")]
    Io(String),
}

/// Boundary maps that [`Mutation`] can corrupt.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryMap {
    Epsilon,
    D1,
    D2,
    D3,
}

/// A deliberate sign flip, for checking that [`verify_identities`] notices.
/// With `cell` set only the image of that basis cell is negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub map: BoundaryMap,
    pub cell: Option<Cell>,
}

/// The resolution attached to a convergent presentation. 3-cells come from
/// `cells`, which shares the generators and rules of the presentation.
#[derive(Clone, Copy)]
pub struct Complex<'a> {
    cp: &'a ConvergentPolygraph,
    cells: &'a Polygraph,
    coherent: Option<&'a CoherentPresentation>,
    mutation: Option<Mutation>,
}

impl<'a> Complex<'a> {
    pub fn new(cp: &'a ConvergentPolygraph) -> Result<Complex<'a>, HomologyError> {
        Complex::with_three_cells(cp, cp.polygraph())
    }

    pub fn with_three_cells(cp: &'a ConvergentPolygraph, cells: &'a Polygraph) -> Result<Complex<'a>, HomologyError> {
        if !cp.polygraph().is_monoid() {
            return Err(HomologyError::NotMonoid);
        }
        Ok(Complex { cp, cells, coherent: None, mutation: None })
    }

    /// Degree 3 given by the Squier completion; enables `i3`.
    pub fn coherent(coh: &'a CoherentPresentation) -> Result<Complex<'a>, HomologyError> {
        let mut cx = Complex::with_three_cells(coh.base(), coh.polygraph())?;
        cx.coherent = Some(coh);
        Ok(cx)
    }

    pub fn mutated(mut self, m: Mutation) -> Complex<'a> {
        self.mutation = Some(m);
        self
    }

    pub fn presentation(&self) -> &'a ConvergentPolygraph {
        self.cp
    }

    /// The polygraph carrying all cells, used for display.
    pub fn polygraph(&self) -> &'a Polygraph {
        self.cells
    }

    pub fn has_contraction3(&self) -> bool {
        self.coherent.is_some()
    }

    pub fn basis(&self, degree: usize) -> Vec<Cell> {
        let p = self.cp.polygraph();
        match degree {
            0 => vec![],
            1 => (0..p.generators().len()).map(Cell::Gen).collect(),
            2 => p.rule_refs(self.cp.limits().pump_bound).into_iter().map(Cell::Rule).collect(),
            3 => (0..self.cells.three_cells().len()).map(Cell::Three).collect(),
            _ => vec![],
        }
    }

    pub fn nf(&self, w: &Word) -> Result<Word, HomologyError> {
        Ok(self.cp.normal_form(w)?)
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        let limits = self.cp.limits();
        find_redexes(self.cp.polygraph(), w, limits.bound_for(w)).is_empty()
    }

    pub fn mult(&self, u: &MonoidElt, v: &MonoidElt) -> Result<MonoidElt, HomologyError> {
        self.nf(&u.concat(v))
    }

    pub fn unit(&self) -> MonoidElt {
        Word::identity(0)
    }

    pub fn ring_mul(&self, r: &RingElt, s: &RingElt) -> Result<RingElt, HomologyError> {
        let mut out = RingElt::zero();
        for (u, a) in r.iter() {
            for (v, b) in s.iter() {
                out.add_term(self.mult(u, v)?, a * b);
            }
        }
        Ok(out)
    }

    /// Left action `u · v[x] = (uv)^[x]`.
    pub fn act(&self, u: &MonoidElt, m: &ModuleElt) -> Result<ModuleElt, HomologyError> {
        let mut out = ModuleElt::zero();
        for ((v, x), c) in m.iter() {
            out.add_term((self.mult(u, v)?, *x), c.clone());
        }
        Ok(out)
    }

    fn flip(&self, map: BoundaryMap, cell: Option<Cell>) -> bool {
        match self.mutation {
            Some(m) if m.map == map => m.cell.is_none() || m.cell == cell,
            _ => false,
        }
    }

    pub fn epsilon(&self, r: &RingElt) -> BigInt {
        let s: BigInt = r.iter().map(|(_, c)| c).sum();
        if self.flip(BoundaryMap::Epsilon, None) {
            -s
        } else {
            s
        }
    }

    /// `[x₁⋯xₙ] = Σᵢ (x₁⋯xᵢ₋₁)^ [xᵢ]`.
    pub fn fox(&self, w: &Word) -> Result<ModuleElt, HomologyError> {
        let mut out = ModuleElt::zero();
        let mut prefix = self.unit();
        for &x in w.letters() {
            out.add_term((prefix.clone(), Cell::Gen(x)), BigInt::one());
            prefix = self.nf(&prefix.concat(&Word::monoid(&[x])))?;
        }
        Ok(out)
    }

    pub fn d1(&self, m: &ModuleElt) -> Result<RingElt, HomologyError> {
        let mut out = RingElt::zero();
        for ((u, x), c) in m.iter() {
            let Cell::Gen(g) = x else { return Err(HomologyError::WrongDegree("d1")) };
            let c = if self.flip(BoundaryMap::D1, Some(*x)) { -c } else { c.clone() };
            out.add_term(self.mult(u, &Word::monoid(&[*g]))?, c.clone());
            out.add_term(u.clone(), -c);
        }
        Ok(out)
    }

    pub fn d2(&self, m: &ModuleElt) -> Result<ModuleElt, HomologyError> {
        let p = self.cp.polygraph();
        let mut out = ModuleElt::zero();
        for ((u, x), c) in m.iter() {
            let Cell::Rule(r) = x else { return Err(HomologyError::WrongDegree("d2")) };
            let img = self.fox(&p.lhs(*r))? - self.fox(&p.rhs(*r))?;
            let c = if self.flip(BoundaryMap::D2, Some(*x)) { -c } else { c.clone() };
            out.add_scaled(&self.act(u, &img)?, &c);
        }
        Ok(out)
    }

    /// `[u f v] = û[f]`, `[f ⋆₁ g] = [f] + [g]`, inverse steps negate.
    pub fn bracket2(&self, z: &ZigZag) -> Result<ModuleElt, HomologyError> {
        let mut out = ModuleElt::zero();
        for s in z.steps() {
            let c = if s.is_forward() { BigInt::one() } else { -BigInt::one() };
            out.add_term((self.nf(&s.left)?, Cell::Rule(s.rule)), c);
        }
        Ok(out)
    }

    pub fn d3(&self, m: &ModuleElt) -> Result<ModuleElt, HomologyError> {
        let mut out = ModuleElt::zero();
        for ((u, x), c) in m.iter() {
            let Cell::Three(i) = x else { return Err(HomologyError::WrongDegree("d3")) };
            let cell = self
                .cells
                .three_cells()
                .get(*i)
                .ok_or_else(|| ExprError { path: "root".into(), msg: format!("no 3-cell #{i}") })?;
            let img = self.bracket2(&cell.source)? - self.bracket2(&cell.target)?;
            let c = if self.flip(BoundaryMap::D3, Some(*x)) { -c } else { c.clone() };
            out.add_scaled(&self.act(u, &img)?, &c);
        }
        Ok(out)
    }

    /// Linearization of a 3-cell composite; fails on ill-composed expressions.
    pub fn bracket3(&self, e: &ThreeCellExpr) -> Result<ModuleElt, HomologyError> {
        boundary3(self.cells, e)?;
        self.fold3(e)
    }

    fn fold3(&self, e: &ThreeCellExpr) -> Result<ModuleElt, HomologyError> {
        Ok(match e {
            ThreeCellExpr::Gen(i) => ModuleElt::term((self.unit(), Cell::Three(*i)), 1),
            ThreeCellExpr::Inv(inner) => -self.fold3(inner)?,
            ThreeCellExpr::Whisker { left, inner, .. } => {
                let u = self.nf(left)?;
                self.act(&u, &self.fold3(inner)?)?
            }
            ThreeCellExpr::Comp1 { inner, .. } => self.fold3(inner)?,
            ThreeCellExpr::Comp2(a, b) => self.fold3(a)? + self.fold3(b)?,
            ThreeCellExpr::Id2(_) | ThreeCellExpr::Exchange { .. } => ModuleElt::zero(),
        })
    }

    /// σ(w) for the left strategy generated by leftmost normalization of `v̂x`:
    /// `σ(vx) = σ(v)x ⋆₁ σ(v̂x)`. On reduced presentations this is leftmost normalization.
    pub fn left_normalization(&self, w: &Word) -> Result<TwoCellPath, HomologyError> {
        let p = self.cp.polygraph();
        let limits = self.cp.limits();
        let mut prefix = self.unit();
        let mut path = TwoCellPath::identity(w.clone());
        for i in 0..w.len() {
            let rest = w.suffix(i + 1);
            let (nf, sigma) = normalize(p, &prefix.concat(&w.slice(i, i + 1)), Strategy::Leftmost, limits)?;
            path = path.then(&sigma.whisker(&Word::identity(0), &rest));
            prefix = nf;
        }
        Ok(path)
    }

    pub fn i0(&self, n: &BigInt) -> RingElt {
        RingElt::term(self.unit(), n.clone())
    }

    /// `u ↦ [û]`, extended over Z.
    pub fn i1(&self, r: &RingElt) -> Result<ModuleElt, HomologyError> {
        let mut out = ModuleElt::zero();
        for (u, c) in r.iter() {
            out.add_scaled(&self.fox(&self.nf(u)?)?, c);
        }
        Ok(out)
    }

    /// `u[x] ↦ [σ(ûx)]`.
    pub fn i2(&self, m: &ModuleElt) -> Result<ModuleElt, HomologyError> {
        let mut out = ModuleElt::zero();
        for ((u, x), c) in m.iter() {
            let Cell::Gen(g) = x else { return Err(HomologyError::WrongDegree("i2")) };
            let w = self.nf(u)?.concat(&Word::monoid(&[*g]));
            out.add_scaled(&self.bracket2(self.left_normalization(&w)?.as_zigzag())?, c);
        }
        Ok(out)
    }

    /// The filling of `ûα ⋆₁ σ(û t(α))` against `σ(û s(α))`.
    pub fn sigma3(&self, u: &MonoidElt, x: Cell) -> Result<ThreeCellExpr, HomologyError> {
        let coh = self.coherent.ok_or(HomologyError::NoCoherence)?;
        let Cell::Rule(r) = x else { return Err(HomologyError::WrongDegree("i3")) };
        let p = self.cp.polygraph();
        let u = self.nf(u)?;
        let one = self.unit();
        let step = ZigZag::new(u.concat(&p.lhs(r)), vec![crate::rewrite::RewriteStep::forward(u.clone(), r, one)]);
        let f = step.then(self.left_normalization(&u.concat(&p.rhs(r)))?.as_zigzag());
        let g = self.left_normalization(&u.concat(&p.lhs(r)))?.into_zigzag();
        Ok(coh.fill_sphere(&f, &g)?)
    }

    /// `u[α] ↦ [σ(ûα)]`.
    pub fn i3(&self, m: &ModuleElt) -> Result<ModuleElt, HomologyError> {
        let mut out = ModuleElt::zero();
        for ((u, x), c) in m.iter() {
            let e = self.sigma3(u, *x)?;
            out.add_scaled(&self.fold3(&e)?, c);
        }
        Ok(out)
    }

    /// Replace every coefficient word by its normal form in this presentation.
    pub fn normalize_coefficients(&self, m: &ModuleElt) -> Result<ModuleElt, HomologyError> {
        let mut out = ModuleElt::zero();
        for ((u, x), c) in m.iter() {
            out.add_term((self.nf(u)?, *x), c.clone());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
