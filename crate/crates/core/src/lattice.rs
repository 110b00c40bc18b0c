//! Finitely generated abelian quotients `L / M` of integer lattices via
//! Smith normal form.

use std::fmt;

use serde::Serialize;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | …` on the leading diagonal.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<i128>,
    pub left: Vec<Vec<i128>>,
    pub rows: usize,
    pub cols: usize,
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row_t ← row_t − f · row_s
fn row_axpy(m: &mut [Vec<i128>], t: usize, s: usize, f: i128) {
    if f == 0 {
        return;
    }
    let src = m[s].clone();
    for (x, y) in m[t].iter_mut().zip(src) {
        *x -= f * y;
    }
}

fn col_axpy(m: &mut [Vec<i128>], t: usize, s: usize, f: i128) {
    if f == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[t] -= f * row[s];
    }
}

/// Smith normal form of an integer `rows × cols` matrix, tracking the left
/// transform only.
pub fn smith_normal_form(a: &[Vec<i128>]) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..rows).map(|j| i128::from(i == j)).collect())
        .collect();

    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero pivot in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut m, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let f = m[i][t] / m[t][t];
                row_axpy(&mut m, i, t, f);
                row_axpy(&mut u, i, t, f);
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let f = m[t][j] / m[t][t];
                col_axpy(&mut m, j, t, f);
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            // divisibility of the rest of the block
            if !dirty {
                let p = m[t][t];
                if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0)) {
                    row_axpy(&mut m, t, i, -1);
                    row_axpy(&mut u, t, i, -1);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // bring the smallest entry of row/col t to the pivot
            let best = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
                .expect("nonzero pivot");
            if best.0 != t {
                m.swap(t, best.0);
                u.swap(t, best.0);
            }
            if best.1 != t {
                swap_cols(&mut m, t, best.1);
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let diagonal = (0..t).map(|i| m[i][i]).collect();
    SmithForm { diagonal, left: u, rows, cols }
}

/// The abelian group `Z^rows / (column span of A)`, presented as
/// `Z/d_1 ⊕ … ⊕ Z^free`.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    snf: SmithForm,
}

/// An element of a [`QuotientGroup`] in reduced normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuotientElement {
    /// Cyclic orders; `0` marks a free `Z` factor.
    pub orders: Vec<i128>,
    pub coords: Vec<i128>,
}

impl QuotientElement {
    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("0 in trivial group");
        }
        let parts: Vec<String> = self
            .orders
            .iter()
            .zip(&self.coords)
            .map(|(o, c)| if *o == 0 { format!("{c} in Z") } else { format!("{c} mod {o}") })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

impl QuotientGroup {
    /// Quotient of `Z^n` by the columns of `relations` (`n × k`).
    pub fn new(relations: &[Vec<i128>]) -> Self {
        QuotientGroup { snf: smith_normal_form(relations) }
    }

    /// Cyclic factor orders with trivial factors dropped; `0` is a free factor.
    pub fn invariant_factors(&self) -> Vec<i128> {
        self.factor_slots().into_iter().map(|(_, d)| d).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.factor_slots().is_empty()
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<i128> {
        self.invariant_factors()
            .into_iter()
            .try_fold(1i128, |acc, d| (d != 0).then_some(acc * d))
    }

    fn factor_slots(&self) -> Vec<(usize, i128)> {
        let r = self.snf.diagonal.len();
        let mut out: Vec<(usize, i128)> = self
            .snf
            .diagonal
            .iter()
            .enumerate()
            .filter(|(_, d)| **d != 1)
            .map(|(i, d)| (i, *d))
            .collect();
        out.extend((r..self.snf.rows).map(|i| (i, 0)));
        out
    }

    pub fn reduce(&self, v: &[i128]) -> QuotientElement {
        assert_eq!(v.len(), self.snf.rows, "element has wrong rank");
        let w: Vec<i128> = self
            .snf
            .left
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect();
        let slots = self.factor_slots();
        QuotientElement {
            orders: slots.iter().map(|(_, d)| *d).collect(),
            coords: slots
                .iter()
                .map(|&(i, d)| if d == 0 { w[i] } else { w[i].rem_euclid(d) })
                .collect(),
        }
    }
}
