use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::expr::{boundary3, carry_across, ExprError, ThreeCellExpr};
use crate::branchings::{
    classify_local_branching, enumerate_critical_branchings, BranchingError, BranchingKind, ConvergentPolygraph,
    LocalBranching,
};
use crate::presentation::{Polygraph, RuleRef, ThreeCell, Word};
use crate::rewrite::{normalize, RewriteError, RewriteStep, Strategy, TwoCellPath, ZigZag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FillError {
    #[error(transparent)]
    Branching(#[from] BranchingError),
    #[error("no generating 3-cell for the critical branching on `{0}`")]
    MissingCell(String),
    #[error("2-cells are not parallel")]
    NotParallel,
    #[error("invalid 2-cell: {0}")]
    Path(String),
    #[error("fuel exhausted")]
    Fuel,
    #[error(transparent)]
    Expr(#[from] ExprError),
}

impl From<RewriteError> for FillError {
    fn from(_: RewriteError) -> Self {
        FillError::Fuel
    }
}

/// One generating confluence: the branching and its leftmost resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquierCell {
    pub branching: LocalBranching,
    pub first_path: TwoCellPath,
    pub second_path: TwoCellPath,
    pub join: Word,
}

/// A convergent polygraph with one 3-cell per critical branching.
#[derive(Clone, Debug)]
pub struct CoherentPresentation {
    base: ConvergentPolygraph,
    polygraph: Polygraph,
    cells: Vec<SquierCell>,
    index: HashMap<(RuleRef, RuleRef, usize), usize>,
}

fn spreadsheet(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'A' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

fn key_of(b: &LocalBranching) -> (RuleRef, RuleRef, usize) {
    (b.first.rule, b.second.rule, b.offset())
}

/// One 3-cell per critical branching; pumped families get one cell per instance.
///
/// A cell on the branching (f, g), f the leftmost step, goes from `g ⋆₁ σ(t(g))` to `f ⋆₁ σ(t(f))`.
pub fn squier_completion(cp: &ConvergentPolygraph) -> CoherentPresentation {
    let p = cp.polygraph();
    let limits = cp.limits();
    let report = enumerate_critical_branchings(p, limits.pump_bound);
    let mut names = vec![String::new(); report.branchings.len()];
    for (k, ((_, _, _), members)) in report.families(p).into_iter().enumerate() {
        let letter = spreadsheet(k);
        for i in members {
            let b = &report.branchings[i];
            let suffix: Vec<String> = [b.first.rule, b.second.rule]
                .iter()
                .filter_map(|r| match r {
                    RuleRef::Pumped { n, .. } => Some(n.to_string()),
                    RuleRef::Plain(_) => None,
                })
                .collect();
            names[i] = format!("{letter}{}", suffix.join("_"));
        }
    }
    let mut polygraph = p.clone();
    polygraph.three_cells.clear();
    let mut cells = Vec::new();
    let mut index = HashMap::new();
    for (b, name) in report.branchings.into_iter().zip(names) {
        let (join, fp) = normalize(p, &b.first.reduct_word(p), Strategy::Leftmost, limits)
            .expect("certified convergent");
        let (_, gp) = normalize(p, &b.second.reduct_word(p), Strategy::Leftmost, limits)
            .expect("certified convergent");
        let source = ZigZag::step(p, b.second.clone()).then(gp.as_zigzag());
        let target = ZigZag::step(p, b.first.clone()).then(fp.as_zigzag());
        polygraph
            .add_three_cell(ThreeCell { name, source, target })
            .expect("resolutions of a confluent branching are parallel");
        index.insert(key_of(&b), cells.len());
        cells.push(SquierCell { branching: b, first_path: fp, second_path: gp, join });
    }
    CoherentPresentation { base: cp.clone(), polygraph, cells, index }
}

/// Result of filling a local branching `(f, g)`: a 3-cell `f ⋆₁ f' ⇛ g ⋆₁ g'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFill {
    pub f_prime: TwoCellPath,
    pub g_prime: TwoCellPath,
    pub expr: ThreeCellExpr,
}

impl CoherentPresentation {
    pub fn base(&self) -> &ConvergentPolygraph {
        &self.base
    }

    /// The (3,1)-polygraph: base rules plus the generating confluences.
    pub fn polygraph(&self) -> &Polygraph {
        &self.polygraph
    }

    pub fn cells(&self) -> &[SquierCell] {
        &self.cells
    }

    /// The critical word of cell `i`.
    pub fn three_cells_source(&self, i: usize) -> &Word {
        &self.cells[i].branching.source
    }

    pub fn cell_name(&self, i: usize) -> &str {
        &self.polygraph.three_cells()[i].name
    }

    pub fn boundary(&self, e: &ThreeCellExpr) -> Result<(ZigZag, ZigZag), ExprError> {
        boundary3(&self.polygraph, e)
    }

    fn sigma(&self, w: &Word) -> Result<TwoCellPath, FillError> {
        Ok(normalize(&self.polygraph, w, Strategy::Leftmost, self.base.limits())?.1)
    }

    /// Step 1 of the filling: close a local branching.
    pub fn fill_local_branching(&self, f: &RewriteStep, g: &RewriteStep) -> Result<LocalFill, FillError> {
        let p = &self.polygraph;
        let word = f.redex_word(p);
        match classify_local_branching(p, f, g)? {
            BranchingKind::Aspherical => {
                let id = TwoCellPath::identity(f.reduct_word(p));
                Ok(LocalFill { f_prime: id.clone(), g_prime: id, expr: ThreeCellExpr::Id2(ZigZag::step(p, f.clone())) })
            }
            BranchingKind::Peiffer => {
                let fp = carry_across(p, f, g);
                let gp = carry_across(p, g, f);
                Ok(LocalFill {
                    f_prime: TwoCellPath::new(f.reduct_word(p), vec![fp]).unwrap(),
                    g_prime: TwoCellPath::new(g.reduct_word(p), vec![gp]).unwrap(),
                    expr: ThreeCellExpr::Exchange { word, first: f.clone(), second: g.clone() },
                })
            }
            BranchingKind::Overlapping => {
                let (a0, a1) = f.span(p);
                let (b0, b1) = g.span(p);
                let (lo, hi) = (a0.min(b0), a1.max(b1));
                let left = word.prefix(lo);
                let right = word.suffix(hi);
                let core = word.slice(lo, hi);
                let fc = RewriteStep::at(p, &core, f.rule, a0 - lo);
                let gc = RewriteStep::at(p, &core, g.rule, b0 - lo);
                let f_first = (fc.position(), fc.rule) < (gc.position(), gc.rule);
                let (h, k) = if f_first { (&fc, &gc) } else { (&gc, &fc) };
                let key = (h.rule, k.rule, k.position() - h.position());
                let &i = self.index.get(&key).ok_or_else(|| FillError::MissingCell(p.show_word(&core)))?;
                let cell = &self.cells[i];
                let hp = cell.first_path.whisker(&left, &right);
                let kp = cell.second_path.whisker(&left, &right);
                // Gen(i) : k ⋆ k' ⇛ h ⋆ h'
                let gen = ThreeCellExpr::Gen(i).whisker(left, right);
                if f_first {
                    Ok(LocalFill { f_prime: hp, g_prime: kp, expr: gen.inv() })
                } else {
                    Ok(LocalFill { f_prime: kp, g_prime: hp, expr: gen })
                }
            }
        }
    }

    /// Fill two positive paths from `u` to its normal form.
    fn fill_positive(&self, f: &TwoCellPath, g: &TwoCellPath, fuel: &mut u64) -> Result<ThreeCellExpr, FillError> {
        if f.steps() == g.steps() {
            return Ok(ThreeCellExpr::Id2(f.as_zigzag().clone()));
        }
        if *fuel == 0 {
            return Err(FillError::Fuel);
        }
        *fuel -= 1;
        let p = &self.polygraph;
        let (Some(f1), Some(g1)) = (f.steps().first(), g.steps().first()) else {
            return Err(FillError::NotParallel);
        };
        let vf = f1.reduct_word(p);
        let vg = g1.reduct_word(p);
        let f_tail = f.drop_front(1, vf.clone());
        let g_tail = g.drop_front(1, vg.clone());
        if f1 == g1 {
            let inner = self.fill_positive(&f_tail, &g_tail, fuel)?;
            return Ok(ThreeCellExpr::comp1(ZigZag::step(p, f1.clone()), inner, ZigZag::identity(f.target(p).unwrap())));
        }
        let local = self.fill_local_branching(f1, g1)?;
        let meet = local.f_prime.target(p).unwrap();
        let h = self.sigma(&meet)?;
        let nf = h.target(p).unwrap();
        let b = self.fill_positive(&f_tail, &local.f_prime.then(&h), fuel)?;
        let c = self.fill_positive(&local.g_prime.then(&h), &g_tail, fuel)?;
        let id_nf = ZigZag::identity(nf);
        let first = ThreeCellExpr::comp1(ZigZag::step(p, f1.clone()), b, id_nf.clone());
        let middle = ThreeCellExpr::comp1(ZigZag::identity(f.source().clone()), local.expr, h.into_zigzag());
        let last = ThreeCellExpr::comp1(ZigZag::step(p, g1.clone()), c, id_nf);
        Ok(first.comp2(middle).comp2(last))
    }

    /// A 3-cell `z ⇛ σ(s(z)) ⋆₁ σ(t(z))⁻`.
    fn to_normal_forms(&self, z: &ZigZag, fuel: &mut u64) -> Result<ThreeCellExpr, FillError> {
        let p = &self.polygraph;
        let words = z.words(p).map_err(|e| FillError::Path(e.to_string()))?;
        let inverse = |t: &TwoCellPath| t.as_zigzag().inverse(p).unwrap();
        let w0 = &words[0];
        let s0 = self.sigma(w0)?;
        let mut acc = ThreeCellExpr::Id2(ZigZag::identity(w0.clone()));
        let prefix_sigma = s0.as_zigzag().clone();
        let mut sigma_prev = s0;
        for (i, step) in z.steps().iter().enumerate() {
            let (wa, wb) = (&words[i], &words[i + 1]);
            let sigma_next = self.sigma(wb)?;
            // e : step ⇛ σ(wa) ⋆ σ(wb)⁻
            let e = if step.is_forward() {
                let d = self.fill_positive(
                    &TwoCellPath::new(wa.clone(), vec![step.clone()]).unwrap().then(&sigma_next),
                    &sigma_prev,
                    fuel,
                )?;
                ThreeCellExpr::comp1(ZigZag::identity(wa.clone()), d, inverse(&sigma_next))
            } else {
                let fwd = step.inverse();
                let d = self.fill_positive(
                    &TwoCellPath::new(wb.clone(), vec![fwd.clone()]).unwrap().then(&sigma_prev),
                    &sigma_next,
                    fuel,
                )?;
                ThreeCellExpr::comp1(ZigZag::step(p, step.clone()), d, inverse(&sigma_next)).inv()
            };
            let prev_inv = inverse(&sigma_prev);
            let lifted = ThreeCellExpr::comp1(
                ZigZag::identity(w0.clone()),
                acc,
                ZigZag::new(wa.clone(), vec![step.clone()]),
            );
            let pre = prefix_sigma.then(&prev_inv);
            let placed = ThreeCellExpr::comp1(pre, e, ZigZag::identity(wb.clone()));
            acc = lifted.comp2(placed);
            sigma_prev = sigma_next;
        }
        Ok(acc)
    }

    /// A 3-cell with boundary `(f, g)` for any two parallel 2-cells.
    pub fn fill_sphere(&self, f: &ZigZag, g: &ZigZag) -> Result<ThreeCellExpr, FillError> {
        let p = &self.polygraph;
        let tf = f.target(p).map_err(|e| FillError::Path(e.to_string()))?;
        let tg = g.target(p).map_err(|e| FillError::Path(e.to_string()))?;
        if f.source() != g.source() || tf != tg {
            return Err(FillError::NotParallel);
        }
        let mut fuel = self.base.limits().fuel;
        if f.equivalent(g) {
            return Ok(ThreeCellExpr::Id2(f.reduced()));
        }
        let (fr, gr) = (f.reduced(), g.reduced());
        if let (Ok(fp), Ok(gp)) = (TwoCellPath::from_zigzag(fr.clone()), TwoCellPath::from_zigzag(gr.clone())) {
            if self.sigma(&tf)?.is_empty() {
                return self.fill_positive(&fp, &gp, &mut fuel);
            }
        }
        let a = self.to_normal_forms(&fr, &mut fuel)?;
        let b = self.to_normal_forms(&gr, &mut fuel)?;
        Ok(a.comp2(b.inv()))
    }

    /// Generating cells used by fillers of the given spheres.
    pub fn extract_finite_subbasis(&self, spheres: &[(ZigZag, ZigZag)]) -> Result<BTreeSet<usize>, FillError> {
        let mut out = BTreeSet::new();
        for (f, g) in spheres {
            out.extend(self.fill_sphere(f, g)?.generators());
        }
        Ok(out)
    }
}
