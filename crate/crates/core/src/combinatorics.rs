//! Partitions, Young tableaux and the integer invariants attached to them:
//! hook lengths, contents, irrep dimensions of `S_n` and `SU_d`, and
//! symmetric-group characters by the Murnaghan–Nakayama rule.
//!
//! Boxes use 1-based `(row, col)` coordinates with rows growing downward,
//! and the content of a box is `col - row`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition `λ ⊢ n`: weakly decreasing positive parts.
///
/// Partitions order so that lexicographically larger part sequences come
/// first, i.e. `(n)` sorts before `(n-1, 1)` and `(1^n)` sorts last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition {
                parts,
                reason: "no parts".into(),
            });
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be positive".into(),
            });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be weakly decreasing".into(),
            });
        }
        Ok(Self { parts })
    }

    /// Validates the parts and that they sum to `n`.
    pub fn of(n: usize, parts: Vec<usize>) -> Result<Self> {
        let p = Self::new(parts)?;
        if p.size() != n {
            return Err(Error::InvalidPartition {
                parts: p.parts,
                reason: format!("parts do not sum to {n}"),
            });
        }
        Ok(p)
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        Self { parts }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Self { parts: vec![n] }
    }

    /// The hook `(n-k, 1^k)`.
    pub fn hook(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::InvalidPartition {
                parts: vec![],
                reason: format!("hook leg {k} must be below {n}"),
            });
        }
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat_n(1, k));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `n`, the number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of the `row`-th row (1-based); zero past the last row.
    pub fn row_len(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    /// Length of the `col`-th column (1-based).
    pub fn col_len(&self, col: usize) -> usize {
        self.parts.iter().take_while(|&&p| p >= col).count()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.row_len(cell.row)
    }

    /// Boxes in row-major reading order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |c| Cell::new(r + 1, c)))
    }

    pub fn is_hook(&self) -> bool {
        self.parts.iter().skip(1).all(|&p| p == 1)
    }

    fn check_cell(&self, cell: Cell) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                shape: self.to_string(),
                row: cell.row,
                col: cell.col,
            })
        }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A box of a Young diagram, 1-based, rows counted downward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

/// A filling of a Young diagram, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        Ok(Self { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn entry(&self, cell: Cell) -> Option<usize> {
        self.rows.get(cell.row.checked_sub(1)?)?.get(cell.col.checked_sub(1)?).copied()
    }

    /// Entries in row-major order.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    /// Where `value` sits, for tableaux with distinct entries.
    pub fn cell_of(&self, value: usize) -> Option<Cell> {
        self.rows.iter().enumerate().find_map(|(r, row)| {
            row.iter().position(|&v| v == value).map(|c| Cell::new(r + 1, c + 1))
        })
    }

    /// Standard: a bijection onto `1..=n`, increasing along rows and columns.
    pub fn is_standard(&self) -> bool {
        let n = self.shape.size();
        let mut word = self.reading_word();
        word.sort_unstable();
        if word != (1..=n).collect::<Vec<_>>() {
            return false;
        }
        self.rows_and_columns_ok(|left, right| left < right)
    }

    /// Semistandard over `1..=d`: rows weakly increase, columns strictly increase.
    pub fn is_semistandard(&self, d: usize) -> bool {
        if self.reading_word().iter().any(|&v| v == 0 || v > d) {
            return false;
        }
        self.rows_and_columns_ok(|left, right| left <= right)
    }

    fn rows_and_columns_ok(&self, row_ok: impl Fn(usize, usize) -> bool) -> bool {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if c > 0 && !row_ok(row[c - 1], v) {
                    return false;
                }
                if r > 0 && self.rows[r - 1][c] >= v {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableauKind {
    Standard,
    /// Semistandard with entries in `1..=d`.
    Semistandard(usize),
}

/// All partitions of `n` with at most `max_parts` parts, lexicographically decreasing.
pub fn partitions(n: usize, max_parts: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_parts_unchecked(prefix.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            rec(remaining - part, part, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Size of the hook at `cell`: the box, the boxes to its right and the boxes below it.
pub fn hook_length(shape: &Partition, cell: Cell) -> Result<usize> {
    shape.check_cell(cell)?;
    let arm = shape.row_len(cell.row) - cell.col;
    let leg = shape.col_len(cell.col) - cell.row;
    Ok(arm + leg + 1)
}

/// `col - row` for a box inside the shape.
pub fn content(shape: &Partition, cell: Cell) -> Result<i64> {
    shape.check_cell(cell)?;
    Ok(cell.col as i64 - cell.row as i64)
}

/// Exponent vectors over primes, used to evaluate products of ratios exactly.
#[derive(Default)]
struct PrimePowers(BTreeMap<u64, i64>);

impl PrimePowers {
    fn add(&mut self, mut value: u64, sign: i64) {
        debug_assert!(value > 0);
        let mut p = 2;
        while p * p <= value {
            while value.is_multiple_of(p) {
                *self.0.entry(p).or_default() += sign;
                value /= p;
            }
            p += 1;
        }
        if value > 1 {
            *self.0.entry(value).or_default() += sign;
        }
    }

    fn eval(&self) -> u64 {
        let mut acc: u64 = 1;
        for (&p, &e) in &self.0 {
            assert!(e >= 0, "ratio is not an integer");
            for _ in 0..e {
                acc = acc.checked_mul(p).expect("dimension overflows u64");
            }
        }
        acc
    }
}

/// Dimension of the Specht module `S_λ`: `n!` over the product of hook lengths.
pub fn dim_symmetric_irrep(shape: &Partition) -> u64 {
    let mut pp = PrimePowers::default();
    for k in 2..=shape.size() as u64 {
        pp.add(k, 1);
    }
    for cell in shape.cells() {
        let h = hook_length(shape, cell).expect("cell enumerated from shape");
        if h > 1 {
            pp.add(h as u64, -1);
        }
    }
    pp.eval()
}

/// Dimension of the `SU_d` irrep `V_λ` by the product formula over pairs `i < j ≤ d`.
pub fn dim_unitary_irrep(shape: &Partition, d: usize) -> Result<u64> {
    if shape.len() > d {
        return Err(Error::SectorInadmissible {
            shape: shape.to_string(),
            d,
        });
    }
    let mut pp = PrimePowers::default();
    for i in 1..=d {
        for j in (i + 1)..=d {
            // λ_i - λ_j + j - i is always positive since λ_i ≥ λ_j
            let num = shape.row_len(i) - shape.row_len(j) + j - i;
            pp.add(num as u64, 1);
            pp.add((j - i) as u64, -1);
        }
    }
    Ok(pp.eval())
}

/// Enumerates standard or semistandard tableaux, ordered lexicographically by
/// reading word.
pub fn enumerate_tableaux(shape: &Partition, kind: TableauKind) -> Result<Vec<Tableau>> {
    let (max_value, distinct) = match kind {
        TableauKind::Standard => (shape.size(), true),
        TableauKind::Semistandard(d) => {
            if shape.len() > d {
                return Err(Error::SectorInadmissible {
                    shape: shape.to_string(),
                    d,
                });
            }
            (d, false)
        }
    };
    let cells: Vec<Cell> = shape.cells().collect();
    let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&l| vec![0; l]).collect();
    let mut used = vec![false; max_value + 1];
    let mut out = Vec::new();
    fill(&cells, 0, &mut rows, &mut used, max_value, distinct, &mut out);
    Ok(out
        .into_iter()
        .map(|rows| Tableau {
            shape: shape.clone(),
            rows,
        })
        .collect())
}

fn fill(
    cells: &[Cell],
    k: usize,
    rows: &mut Vec<Vec<usize>>,
    used: &mut [bool],
    max_value: usize,
    distinct: bool,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let Some(&cell) = cells.get(k) else {
        out.push(rows.clone());
        return;
    };
    let (r, c) = (cell.row - 1, cell.col - 1);
    let mut lo = 1;
    if c > 0 {
        lo = lo.max(rows[r][c - 1] + usize::from(distinct));
    }
    if r > 0 {
        lo = lo.max(rows[r - 1][c] + 1);
    }
    for v in lo..=max_value {
        if distinct && used[v] {
            continue;
        }
        rows[r][c] = v;
        if distinct {
            used[v] = true;
        }
        fill(cells, k + 1, rows, used, max_value, distinct, out);
        if distinct {
            used[v] = false;
        }
    }
    rows[r][c] = 0;
}

/// The row-filling standard tableau: row `i` holds consecutive integers
/// starting after the boxes of rows `1..i`.
pub fn canonical_tableau(shape: &Partition) -> Tableau {
    let mut next = 1;
    let rows = shape
        .parts()
        .iter()
        .map(|&len| {
            let row: Vec<usize> = (next..next + len).collect();
            next += len;
            row
        })
        .collect();
    Tableau {
        shape: shape.clone(),
        rows,
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// Number of permutations with the given cycle type: `n! / z_μ`.
pub fn class_size(cycle_type: &Partition) -> u64 {
    let mut pp = PrimePowers::default();
    for k in 2..=cycle_type.size() as u64 {
        pp.add(k, 1);
    }
    let mut multiplicity: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in cycle_type.parts() {
        *multiplicity.entry(p).or_default() += 1;
        if p > 1 {
            pp.add(p as u64, -1);
        }
    }
    for &m in multiplicity.values() {
        for k in 2..=m as u64 {
            pp.add(k, -1);
        }
    }
    pp.eval()
}

/// The irreducible character `χ_λ` evaluated on the class of `cycle_type`.
pub fn character(shape: &Partition, cycle_type: &Partition) -> Result<i64> {
    if shape.size() != cycle_type.size() {
        return Err(Error::SizeMismatch(format!(
            "shape {shape} and cycle type {cycle_type} partition different integers"
        )));
    }
    let mut memo = HashMap::new();
    Ok(mn_rec(shape.parts(), cycle_type.parts(), &mut memo))
}

/// Murnaghan–Nakayama: strip a rim hook of length `cycles[0]` in every
/// possible way. Rim hooks are bead moves on the beta-set `λ_i + (s - i)`.
fn mn_rec(shape: &[usize], cycles: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return i64::from(shape.is_empty());
    };
    let key = (shape.to_vec(), cycles.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let s = shape.len();
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + s - 1 - i).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let len = next.len();
        let reduced: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(k, &x)| x - (len - 1 - k))
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn_rec(&reduced, rest, memo);
    }
    memo.insert(key, total);
    total
}
