use std::collections::HashMap;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{cell_name, show_ring_terms, Cell, Complex, HomologyError, ModuleElt, MonoidElt, RingElt};
use crate::presentation::{Polygraph, Word};
use crate::rewrite::DeglexOrder;

/// All normal forms, level by level, each level in deglex order.
/// Prefixes of normal forms are normal, so extending the previous level by one letter suffices.
pub fn enumerate_monoid(cx: &Complex<'_>, bound: usize) -> Result<Vec<MonoidElt>, HomologyError> {
    let p = cx.presentation().polygraph();
    let order = DeglexOrder::of(p);
    let mut all = vec![cx.unit()];
    let mut level = vec![cx.unit()];
    while !level.is_empty() {
        let mut next = Vec::new();
        for w in &level {
            for g in 0..p.generators().len() {
                let v = w.concat(&Word::monoid(&[g]));
                if cx.is_normal(&v) {
                    next.push(v);
                }
            }
        }
        next.sort_by(|a, b| order.compare(a, b).unwrap_or_else(|_| a.cmp(b)));
        all.extend(next.iter().cloned());
        if all.len() > bound {
            return Err(HomologyError::BoundExceeded(bound));
        }
        level = next;
    }
    Ok(all)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub name: String,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// `self · other`, or `None` on a dimension mismatch.
    pub fn mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        if self.ncols() != other.nrows() {
            return None;
        }
        let entries = (0..self.nrows())
            .map(|i| {
                (0..other.ncols())
                    .map(|j| (0..self.ncols()).map(|k| &self.entries[i][k] * &other.entries[k][j]).sum())
                    .collect()
            })
            .collect();
        Some(IntMatrix {
            name: format!("{}{}", self.name, other.name),
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            entries,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_zero())
    }

    pub fn render(&self) -> String {
        let mut s = format!("matrix {} {} x {}\nrows: {}\ncols: {}\n", self.name, self.nrows(), self.ncols(), self.rows.join(" "), self.cols.join(" "));
        for row in &self.entries {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&r.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Matrices over ZM, acting on the left of column vectors of basis cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    pub name: String,
    pub rows: Vec<Cell>,
    pub cols: Vec<Cell>,
    pub entries: Vec<Vec<RingElt>>,
}

impl SymbolicMatrix {
    pub fn render(&self, p: &Polygraph) -> String {
        let names = |cs: &[Cell]| cs.iter().map(|c| cell_name(p, *c)).collect::<Vec<_>>().join(" ");
        // d1 lands in ZM itself, a single row
        let rows = if self.rows.is_empty() { "1".to_string() } else { names(&self.rows) };
        let mut s = format!("symbolic {} {} x {}\nrows: {}\ncols: {}\n", self.name, self.entries.len(), self.cols.len(), rows, names(&self.cols));
        for row in &self.entries {
            let r: Vec<String> = row.iter().map(|x| show_ring_terms(p, x)).collect();
            s.push_str(&r.join(" | "));
            s.push('\n');
        }
        s
    }
}

fn legend(p: &Polygraph, u: &Word, x: Option<Cell>) -> String {
    let w = if u.is_identity() { "1".to_string() } else { p.show_word(u).replace(' ', ".") };
    match x {
        Some(c) => format!("{w}[{}]", cell_name(p, c)),
        None => w,
    }
}

fn image(cx: &Complex<'_>, degree: usize, m: &ModuleElt) -> Result<Vec<((Word, Option<Cell>), BigInt)>, HomologyError> {
    Ok(match degree {
        1 => cx.d1(m)?.iter().map(|(w, c)| ((w.clone(), None), c.clone())).collect(),
        2 => cx.d2(m)?.iter().map(|((w, x), c)| ((w.clone(), Some(*x)), c.clone())).collect(),
        _ => cx.d3(m)?.iter().map(|((w, x), c)| ((w.clone(), Some(*x)), c.clone())).collect(),
    })
}

/// Integer matrices of d₁, d₂, d₃ over the bases M × Σₖ (element-major).
pub fn integer_matrices(cx: &Complex<'_>, bound: usize) -> Result<Vec<IntMatrix>, HomologyError> {
    let elts = enumerate_monoid(cx, bound)?;
    let p = cx.polygraph();
    let basis = |k: usize| -> Vec<(Word, Option<Cell>)> {
        if k == 0 {
            return elts.iter().map(|u| (u.clone(), None)).collect();
        }
        elts.iter().flat_map(|u| cx.basis(k).into_iter().map(move |x| (u.clone(), Some(x)))).collect()
    };
    let mut out = Vec::new();
    for k in 1..=3 {
        let dom = basis(k);
        let cod = basis(k - 1);
        let index: HashMap<&(Word, Option<Cell>), usize> = cod.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut entries = vec![vec![BigInt::zero(); dom.len()]; cod.len()];
        for (j, (u, x)) in dom.iter().enumerate() {
            let m = ModuleElt::term((u.clone(), x.unwrap()), 1);
            for (key, c) in image(cx, k, &m)? {
                entries[index[&key]][j] += c;
            }
        }
        out.push(IntMatrix {
            name: format!("d{k}"),
            rows: cod.iter().map(|(u, x)| legend(p, u, *x)).collect(),
            cols: dom.iter().map(|(u, x)| legend(p, u, *x)).collect(),
            entries,
        });
    }
    Ok(out)
}

/// d₁, d₂, d₃ as matrices with entries in ZM; no enumeration of M is needed.
pub fn symbolic_matrices(cx: &Complex<'_>) -> Result<Vec<SymbolicMatrix>, HomologyError> {
    let mut out = Vec::new();
    for k in 1..=3 {
        let cols = cx.basis(k);
        let rows = cx.basis(k - 1);
        let nrows = if k == 1 { 1 } else { rows.len() };
        let mut entries = vec![vec![RingElt::zero(); cols.len()]; nrows];
        for (j, x) in cols.iter().enumerate() {
            let m = ModuleElt::term((cx.unit(), *x), 1);
            for ((w, y), c) in image(cx, k, &m)? {
                let i = match y {
                    None => 0,
                    Some(y) => rows.iter().position(|r| *r == y).expect("image cell in basis"),
                };
                entries[i][j].add_term(w, c);
            }
        }
        out.push(SymbolicMatrix { name: format!("d{k}"), rows, cols, entries });
    }
    Ok(out)
}

/// Write `dK.txt` for each integer matrix and `dK.sym.txt` for each symbolic one.
pub fn write_matrices(dir: &Path, p: &Polygraph, ints: &[IntMatrix], syms: &[SymbolicMatrix]) -> Result<Vec<PathBuf>, HomologyError> {
    std::fs::create_dir_all(dir).map_err(|e| HomologyError::Io(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    let mut put = |name: String, text: String| -> Result<(), HomologyError> {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| HomologyError::Io(format!("{}: {e}", path.display())))?;
        files.push(path);
        Ok(())
    };
    for m in ints {
        put(format!("{}.txt", m.name), m.render())?;
    }
    for m in syms {
        put(format!("{}.sym.txt", m.name), m.render(p))?;
    }
    Ok(files)
}
