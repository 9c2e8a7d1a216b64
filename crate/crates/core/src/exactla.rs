//! Exact null-space computation for integer matrices.
//!
//! Elimination is fraction-free: every row update is an integer
//! combination `p * row_i - q * row_k` followed by division of the row by
//! its content, so intermediate values stay integral and small. The work
//! is done in machine integers with checked arithmetic and restarted at a
//! wider type (`i64`, then `i128`, then `BigInt`) the moment anything would
//! overflow, so results never depend on which path ran.
//!
//! Before any of that, a kernel is guessed modulo a 61-bit prime and lifted
//! by rational reconstruction. The guess is only accepted when every lifted
//! vector satisfies `M v = 0` over the integers: rank mod p never exceeds
//! the rational rank, so that many verified independent vectors pin the
//! nullity exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::voltage::Graph;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Circulant matrix whose first row is `first_row`; row `i` is the
    /// first row shifted right by `i`.
    pub fn circulant(first_row: &[i64]) -> Self {
        let n = first_row.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, BigInt::from(first_row[(j + n - i) % n]));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// `M v`, exactly.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(m, _)| !m.is_zero())
                    .map(|(m, x)| m * x)
                    .sum()
            })
            .collect())
    }
}

/// Symmetric 0/1 adjacency matrix.
pub fn adjacency_matrix(g: &Graph) -> IntMatrix {
    let n = g.vertex_count();
    let mut m = IntMatrix::zeros(n, n);
    for u in 0..n {
        for &v in g.neighbors(u) {
            m.set(u, v, BigInt::one());
        }
    }
    m
}

/// Basis of the rational null space, each vector scaled to coprime
/// integers with a positive leading nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    vectors: Vec<Vec<BigInt>>,
}

impl KernelBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vec<BigInt>> {
        self.vectors
    }
}

/// Checked integer arithmetic needed by the elimination.
trait Scalar: Clone + Integer + Signed {
    fn mul_c(&self, other: &Self) -> Option<Self>;
    fn sub_c(&self, other: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i128 {
    fn mul_c(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn sub_c(&self, other: &Self) -> Option<Self> {
        i128::checked_sub(*self, *other)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for i64 {
    fn mul_c(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn sub_c(&self, other: &Self) -> Option<Self> {
        i64::checked_sub(*self, *other)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn mul_c(&self, other: &Self) -> Option<Self> {
        CheckedMul::checked_mul(self, other)
    }
    fn sub_c(&self, other: &Self) -> Option<Self> {
        CheckedSub::checked_sub(self, other)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Reduced echelon form: row `i` has its pivot at `pivots[i]` and zeros in
/// every other pivot column.
struct Echelon<T> {
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

fn remove_content<T: Scalar>(row: &mut [T]) {
    let mut g = T::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g > T::one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = x.div_floor(&g);
            }
        }
    }
}

/// Gauss-Jordan over the integers. Pivot for column `c` is the first row
/// (top-down, among rows not yet used) with a nonzero entry. Returns `None`
/// on overflow.
fn echelon<T: Scalar>(mut rows: Vec<Vec<T>>, cols: usize) -> Option<Echelon<T>> {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        remove_content(&mut rows[rank]);
        let (before, rest) = rows.split_at_mut(rank);
        let (pivot_row, after) = rest.split_first_mut().unwrap();
        let pivot = pivot_row[c].clone();
        let support: Vec<usize> = (c..cols).filter(|&k| !pivot_row[k].is_zero()).collect();
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[c]);
            let mp = pivot.div_floor(&g);
            let mr = row[c].div_floor(&g);
            let scale = !mp.is_one();
            if scale {
                for x in row.iter_mut().filter(|x| !x.is_zero()) {
                    *x = x.mul_c(&mp)?;
                }
            }
            for &k in &support {
                row[k] = row[k].sub_c(&pivot_row[k].mul_c(&mr)?)?;
            }
            debug_assert!(row[c].is_zero());
            if scale {
                remove_content(row);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    Some(Echelon { rows, pivots })
}

fn null_vectors<T: Scalar>(ech: &Echelon<T>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut is_pivot = vec![false; cols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        // v_free = L, v_pivot(i) = -L * row_i[free] / row_i[pivot(i)]
        let mut l = BigInt::one();
        for (i, &pc) in ech.pivots.iter().enumerate() {
            if !ech.rows[i][free].is_zero() {
                l = l.lcm(&ech.rows[i][pc].to_big());
            }
        }
        let mut v = vec![BigInt::zero(); cols];
        v[free] = l.clone();
        for (i, &pc) in ech.pivots.iter().enumerate() {
            let e = &ech.rows[i][free];
            if !e.is_zero() {
                v[pc] = -(&l * e.to_big()) / ech.rows[i][pc].to_big();
            }
        }
        normalize(&mut v);
        out.push(v);
    }
    out
}

/// Coprime entries, positive leading nonzero entry.
fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let negate = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
}

fn converted<T>(m: &IntMatrix, conv: impl Fn(&BigInt) -> Option<T>) -> Option<Vec<Vec<T>>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(&conv).collect())
        .collect()
}

enum Reduced {
    Small(Echelon<i64>),
    Wide(Echelon<i128>),
    Big(Echelon<BigInt>),
}

/// Tries `i64`, then `i128`, then `BigInt`.
fn reduce(m: &IntMatrix) -> Reduced {
    let cols = m.cols();
    if let Some(ech) = converted(m, ToPrimitive::to_i64).and_then(|rows| echelon(rows, cols)) {
        return Reduced::Small(ech);
    }
    if let Some(ech) = converted(m, ToPrimitive::to_i128).and_then(|rows| echelon(rows, cols)) {
        return Reduced::Wide(ech);
    }
    let rows = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    Reduced::Big(echelon(rows, cols).expect("BigInt arithmetic cannot overflow"))
}

const P: u64 = (1 << 61) - 1;

fn mul_p(a: u64, b: u64) -> u64 {
    let t = a as u128 * b as u128;
    let r = (t as u64 & P) + (t >> 61) as u64;
    if r >= P {
        r - P
    } else {
        r
    }
}

fn pow_p(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_p(r, a);
        }
        a = mul_p(a, a);
        e >>= 1;
    }
    r
}

/// Nonzero entries of each row, when every entry fits in `i64`.
fn sparse_rows(m: &IntMatrix) -> Option<Vec<Vec<(usize, i64)>>> {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| Some((c, x.to_i64()?)))
                .collect()
        })
        .collect()
}

fn in_kernel(sparse: &[Vec<(usize, i64)>], v: &[i64]) -> Option<bool> {
    for row in sparse {
        let mut acc = 0i128;
        for &(c, x) in row {
            acc = acc.checked_add(x as i128 * v[c] as i128)?;
        }
        if acc != 0 {
            return Some(false);
        }
    }
    Some(true)
}

/// `x` as `num / den` with both below `sqrt(P / 2)`, if such a pair exists.
fn reconstruct(x: u64) -> Option<(i64, i64)> {
    const BOUND: i128 = 1 << 30;
    let (mut r0, mut r1) = (P as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 >= BOUND {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() >= BOUND {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some((num as i64, den as i64))
}

/// Reduced row echelon form mod `P`; returns pivot columns.
fn rref_mod_p(rows: &mut [Vec<u64>], cols: usize) -> Vec<usize> {
    let m = rows.len();
    let mut pivots = Vec::new();
    for c in 0..cols {
        let rank = pivots.len();
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = pow_p(rows[rank][c], P - 2);
        let support: Vec<usize> = (c..cols).filter(|&k| rows[rank][k] != 0).collect();
        for &k in &support {
            rows[rank][k] = mul_p(rows[rank][k], inv);
        }
        let (before, rest) = rows.split_at_mut(rank);
        let (pivot_row, after) = rest.split_first_mut().unwrap();
        for row in before.iter_mut().chain(after.iter_mut()) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for &k in &support {
                let d = mul_p(f, pivot_row[k]);
                row[k] = if row[k] >= d {
                    row[k] - d
                } else {
                    row[k] + P - d
                };
            }
        }
        pivots.push(c);
    }
    pivots
}

/// Kernel lifted from mod `P`, or `None` if reconstruction or the exact
/// check fails.
fn modular_kernel(m: &IntMatrix) -> Option<Vec<Vec<BigInt>>> {
    modular_kernel_sparse(&sparse_rows(m)?, m.cols())
}

fn modular_kernel_sparse(sparse: &[Vec<(usize, i64)>], cols: usize) -> Option<Vec<Vec<BigInt>>> {
    let mut rows: Vec<Vec<u64>> = sparse
        .iter()
        .map(|entries| {
            let mut row = vec![0; cols];
            for &(c, x) in entries {
                row[c] = x.rem_euclid(P as i64) as u64;
            }
            row
        })
        .collect();
    let pivots = rref_mod_p(&mut rows, cols);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut fracs = vec![(0i64, 1i64); cols];
        fracs[free] = (1, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            let e = rows[i][free];
            if e != 0 {
                fracs[pc] = reconstruct(P - e)?;
            }
        }
        let l = fracs
            .iter()
            .try_fold(1i64, |l, &(_, d)| (l / l.gcd(&d)).checked_mul(d))?;
        let mut v = fracs
            .iter()
            .map(|&(num, den)| (l / den).checked_mul(num))
            .collect::<Option<Vec<i64>>>()?;
        let g = v.iter().fold(0, |g, x| g.gcd(x));
        let sign = if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
            -g
        } else {
            g
        };
        v.iter_mut().for_each(|x| *x /= sign);
        if !in_kernel(sparse, &v)? {
            return None;
        }
        out.push(v.into_iter().map(BigInt::from).collect());
    }
    Some(out)
}

/// Exact null-space basis of a square matrix, one vector per free column in
/// ascending column order. Every vector is checked against `M v = 0` before
/// it is returned.
pub fn kernel_basis(m: &IntMatrix) -> Result<KernelBasis> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if let Some(vectors) = modular_kernel(m) {
        return Ok(KernelBasis { vectors });
    }
    let cols = m.cols();
    let vectors = match reduce(m) {
        Reduced::Small(ech) => null_vectors(&ech, cols),
        Reduced::Wide(ech) => null_vectors(&ech, cols),
        Reduced::Big(ech) => null_vectors(&ech, cols),
    };
    for v in &vectors {
        if m.mul_vec(v)?.iter().any(|x| !x.is_zero()) {
            return Err(Error::KernelVerification);
        }
    }
    Ok(KernelBasis { vectors })
}

/// Rank via the same elimination.
pub fn rank(m: &IntMatrix) -> usize {
    match reduce(m) {
        Reduced::Small(ech) => ech.pivots.len(),
        Reduced::Wide(ech) => ech.pivots.len(),
        Reduced::Big(ech) => ech.pivots.len(),
    }
}

/// Dimension of the adjacency null space.
pub fn nullity(g: &Graph) -> usize {
    graph_kernel(g).dimension()
}

/// Null-space basis of the adjacency matrix of `g`.
pub fn graph_kernel(g: &Graph) -> KernelBasis {
    let sparse: Vec<Vec<(usize, i64)>> = (0..g.vertex_count())
        .map(|v| {
            let mut row: Vec<_> = g.neighbors(v).iter().map(|&u| (u, 1)).collect();
            row.sort_unstable();
            row
        })
        .collect();
    if let Some(vectors) = modular_kernel_sparse(&sparse, g.vertex_count()) {
        return KernelBasis { vectors };
    }
    kernel_basis(&adjacency_matrix(g)).expect("adjacency matrices are square")
}

/// Nullity one with a kernel vector that has no zero entry. The
/// zero-vertex graph is not a nut graph.
pub fn is_nut(g: &Graph) -> bool {
    is_nut_kernel(&graph_kernel(g))
}

pub fn is_nut_kernel(kernel: &KernelBasis) -> bool {
    match kernel.vectors() {
        [v] => !v.is_empty() && v.iter().all(|x| !x.is_zero()),
        _ => false,
    }
}

/// Whether the neighbour values sum to zero at every vertex.
pub fn verify_local_condition(g: &Graph, v: &[BigInt]) -> Result<bool> {
    if v.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            actual: v.len(),
        });
    }
    Ok((0..g.vertex_count()).all(|x| {
        g.neighbors(x)
            .iter()
            .map(|&y| &v[y])
            .sum::<BigInt>()
            .is_zero()
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitProfile {
    Constant,
    Alternating,
    Neither,
}

/// Shape of `v` along an orbit listed in cyclic order. `Constant` wins
/// over `Alternating` (e.g. for the zero vector).
pub fn orbit_profile(v: &[BigInt], orbit: &[usize]) -> Result<OrbitProfile> {
    if let Some(&bad) = orbit.iter().find(|&&i| i >= v.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: v.len(),
        });
    }
    let Some(&first) = orbit.first() else {
        return Ok(OrbitProfile::Constant);
    };
    let x0 = &v[first];
    if orbit.iter().all(|&i| &v[i] == x0) {
        return Ok(OrbitProfile::Constant);
    }
    let alternating = orbit.len().is_multiple_of(2)
        && orbit.iter().enumerate().all(
            |(j, &i)| {
                if j % 2 == 0 {
                    &v[i] == x0
                } else {
                    v[i] == -x0
                }
            },
        );
    Ok(if alternating {
        OrbitProfile::Alternating
    } else {
        OrbitProfile::Neither
    })
}
