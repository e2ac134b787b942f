//! Exact invariants of integer symmetric matrices: rank, inertia, and the
//! determinant of the nondegenerate quotient lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeInvariants {
    pub size: usize,
    pub rank: usize,
    /// Determinant of Z^n modulo the radical, with the induced form.
    pub det: i64,
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl LatticeInvariants {
    pub fn signature(&self) -> (usize, usize, usize) {
        (self.n_plus, self.n_minus, self.n_zero)
    }
}

pub fn lattice_invariants(gram: &[Vec<i64>]) -> LatticeInvariants {
    let n = gram.len();
    let (n_plus, n_minus) = inertia(gram);
    let rank = n_plus + n_minus;
    LatticeInvariants { size: n, rank, det: quotient_det(gram, rank), n_plus, n_minus, n_zero: n - rank }
}

/// Counts of positive and negative entries in a congruence diagonalization
/// over Q (Sylvester's law of inertia). Runs in 128-bit rationals and
/// repeats in arbitrary precision if an intermediate value overflows.
pub fn inertia(gram: &[Vec<i64>]) -> (usize, usize) {
    inertia_in::<i128>(gram).or_else(|| inertia_in::<BigInt>(gram)).expect("arbitrary precision does not overflow")
}

fn inertia_in<I>(gram: &[Vec<i64>]) -> Option<(usize, usize)>
where
    I: Clone + Integer + Signed + From<i64> + CheckedAdd + CheckedSub + CheckedMul,
{
    let n = gram.len();
    let mut a: Vec<Vec<Ratio<I>>> =
        gram.iter().map(|r| r.iter().map(|&v| Ratio::from_integer(I::from(v))).collect()).collect();
    let (mut pos, mut neg) = (0, 0);
    let mut alive: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        let pivot = alive.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // Zero diagonal: add row/column j to i so that a_ii becomes 2a_ij.
                let Some((i, j)) = alive
                    .iter()
                    .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero())
                else {
                    break;
                };
                for k in 0..n {
                    a[i][k] = a[i][k].checked_add(&a[j][k])?;
                }
                for k in 0..n {
                    a[k][i] = a[k][i].checked_add(&a[k][j])?;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        alive.retain(|&i| i != p);
        for &i in &alive {
            if a[i][p].is_zero() {
                continue;
            }
            let f = a[i][p].checked_div(&d)?;
            for k in 0..n {
                a[i][k] = a[i][k].checked_sub(&f.checked_mul(&a[p][k])?)?;
            }
            for k in 0..n {
                a[k][i] = a[k][i].checked_sub(&f.checked_mul(&a[k][p])?)?;
            }
        }
    }
    Some((pos, neg))
}

/// Corank of `gram` if it is negative semidefinite, `None` otherwise.
/// Stops at the first pivot that rules out semidefiniteness.
pub fn negative_semidefinite_corank(gram: &[Vec<i64>]) -> Option<usize> {
    match nsd_corank_in::<i128>(gram) {
        Ok(r) => r,
        Err(Overflow) => nsd_corank_in::<BigInt>(gram).unwrap_or(None),
    }
}

struct Overflow;

fn nsd_corank_in<I>(gram: &[Vec<i64>]) -> Result<Option<usize>, Overflow>
where
    I: Clone + Integer + Signed + From<i64> + CheckedAdd + CheckedSub + CheckedMul,
{
    let n = gram.len();
    let mut m: Vec<Vec<Ratio<I>>> =
        gram.iter().map(|r| r.iter().map(|&v| Ratio::from_integer(I::from(-v))).collect()).collect();
    let mut corank = 0;
    for k in 0..n {
        let p = m[k][k].clone();
        if p.is_negative() {
            return Ok(None);
        }
        if p.is_zero() {
            // A zero diagonal entry of a semidefinite matrix has a zero row.
            if (k + 1..n).any(|j| !m[k][j].is_zero()) {
                return Ok(None);
            }
            corank += 1;
            continue;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].checked_div(&p).ok_or(Overflow)?;
            for j in k..n {
                let d = f.checked_mul(&m[k][j]).ok_or(Overflow)?;
                m[i][j] = m[i][j].checked_sub(&d).ok_or(Overflow)?;
            }
        }
    }
    Ok(Some(corank))
}

/// Finds unimodular U with U G in row echelon form; the last n - rank rows of
/// U span the saturated integer radical, so the leading rank x rank block of
/// U G U^T is the Gram matrix of the quotient lattice.
fn quotient_det(gram: &[Vec<i64>], rank: usize) -> i64 {
    let n = gram.len();
    if rank == 0 {
        return 1;
    }
    let mut h: Vec<Vec<BigInt>> = gram.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut u: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut row = 0;
    for col in 0..n {
        if row == n {
            break;
        }
        // Smallest nonzero entry in the column becomes the pivot.
        while let Some(p) =
            (row..n).filter(|&i| !h[i][col].is_zero()).min_by(|&x, &y| h[x][col].abs().cmp(&h[y][col].abs()))
        {
            h.swap(row, p);
            u.swap(row, p);
            let mut done = true;
            for i in row + 1..n {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = &h[i][col] / &h[row][col];
                for k in 0..n {
                    let hv = &q * &h[row][k];
                    h[i][k] -= hv;
                    let uv = &q * &u[row][k];
                    u[i][k] -= uv;
                }
                if !h[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                row += 1;
                break;
            }
        }
    }
    debug_assert_eq!(row, rank);
    let g: Vec<Vec<BigInt>> = gram.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut block = vec![vec![BigRational::zero(); rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            let mut s = BigInt::zero();
            for a in 0..n {
                if u[i][a].is_zero() {
                    continue;
                }
                for b in 0..n {
                    s += &u[i][a] * &g[a][b] * &u[j][b];
                }
            }
            block[i][j] = BigRational::from_integer(s);
        }
    }
    let d = rational_det(block);
    i64::try_from(d.to_integer()).expect("determinant fits in i64")
}

fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pv = m[c][c].clone();
        det *= &pv;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pv;
            for k in c..n {
                let v = &f * &m[c][k];
                m[i][k] -= v;
            }
        }
    }
    det
}
