//! Exact rational Gauss-Jordan elimination.
//!
//! [`Elimination`] reduces the coefficient matrix once. Rows are processed in
//! order and each independent row joins a basis kept in reduced row echelon
//! form, together with the combination of basis rows that produced it. A
//! right-hand side is then solved by applying those combinations, and
//! consistency of the dependent rows is settled by substituting back.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{DiophError, GeodeticSystem, RhsVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveTag {
    Unique,
    Inconsistent,
    Underdetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique { solution: Vec<BigRational> },
    Inconsistent,
    /// Consistent with a `kernel_rank`-dimensional solution space;
    /// `particular` sets every free variable to zero.
    Underdetermined { particular: Vec<BigRational>, kernel_rank: usize },
}

impl SolveOutcome {
    pub fn tag(&self) -> SolveTag {
        match self {
            SolveOutcome::Unique { .. } => SolveTag::Unique,
            SolveOutcome::Inconsistent => SolveTag::Inconsistent,
            SolveOutcome::Underdetermined { .. } => SolveTag::Underdetermined,
        }
    }

    /// The unique solution when every entry is a positive integer.
    pub fn natural(&self) -> Option<Vec<u32>> {
        match self {
            SolveOutcome::Unique { solution } => to_natural(solution),
            _ => None,
        }
    }

    pub fn is_natural(&self) -> bool {
        self.natural().is_some()
    }
}

fn to_natural(x: &[BigRational]) -> Option<Vec<u32>> {
    x.iter()
        .map(|v| (v.is_integer() && v.is_positive()).then(|| v.to_integer().to_u32()).flatten())
        .collect()
}

/// An integer row scaled by a common positive denominator.
#[derive(Debug, Clone)]
struct ScaledRow {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl ScaledRow {
    fn from_rationals(values: &[BigRational]) -> Self {
        let denominator = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let numerators = values.iter().map(|v| v.numer() * (&denominator / v.denom())).collect();
        ScaledRow { numerators, denominator }
    }

    fn dot(&self, b: &[BigInt]) -> BigRational {
        let s: BigInt = self.numerators.iter().zip(b).filter(|(c, _)| !c.is_zero()).map(|(c, x)| c * x).sum();
        BigRational::new(s, self.denominator.clone())
    }
}

#[derive(Debug, Clone)]
pub struct Elimination {
    vars: usize,
    supports: Vec<Vec<usize>>,
    /// Original indices of the independent rows, in the order they joined.
    basis_rows: Vec<usize>,
    /// Pivot column of each reduced row.
    pivots: Vec<usize>,
    /// Reduced row echelon form, one row per basis row.
    reduced: Vec<Vec<BigRational>>,
    /// `reduced[i] = sum_j combos[i][j] * A[basis_rows[j]]`.
    combos: Vec<ScaledRow>,
}

impl Elimination {
    pub fn new(sys: &GeodeticSystem) -> Self {
        let vars = sys.variable_count();
        let supports: Vec<Vec<usize>> = sys.rows().iter().map(|r| r.support.clone()).collect();
        let mut basis_rows = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut reduced: Vec<Vec<BigRational>> = Vec::new();
        let mut combos: Vec<Vec<BigRational>> = Vec::new();

        for (row_index, support) in supports.iter().enumerate() {
            let mut row = vec![BigRational::zero(); vars];
            for &e in support {
                row[e] = BigRational::one();
            }
            let r = reduced.len();
            let mut combo = vec![BigRational::zero(); r + 1];
            combo[r] = BigRational::one();
            for i in 0..r {
                let f = row[pivots[i]].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, y) in row.iter_mut().zip(&reduced[i]) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
                for (x, y) in combo.iter_mut().zip(&combos[i]) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            let Some(p) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            let inv = row[p].recip();
            row.iter_mut().for_each(|x| *x *= &inv);
            combo.iter_mut().for_each(|x| *x *= &inv);
            // clear the new pivot column from the earlier rows
            for i in 0..r {
                let f = reduced[i][p].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, y) in reduced[i].iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
                combos[i].push(BigRational::zero());
                for (x, y) in combos[i].iter_mut().zip(&combo) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            for c in combos.iter_mut() {
                c.resize(r + 1, BigRational::zero());
            }
            basis_rows.push(row_index);
            pivots.push(p);
            reduced.push(row);
            combos.push(combo);
        }

        let combos = combos.iter().map(|c| ScaledRow::from_rationals(c)).collect();
        Elimination { vars, supports, basis_rows, pivots, reduced, combos }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn variable_count(&self) -> usize {
        self.vars
    }

    pub fn kernel_rank(&self) -> usize {
        self.vars - self.rank()
    }

    /// Columns without a pivot.
    pub fn free_variables(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.vars];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.vars).filter(|&v| !is_pivot[v]).collect()
    }

    /// Solution with free variables at zero, and whether it satisfies every row.
    fn particular(&self, constants: &[u64]) -> (Vec<BigRational>, bool) {
        let b_basis: Vec<BigInt> = self.basis_rows.iter().map(|&i| BigInt::from(constants[i])).collect();
        let mut x = vec![BigRational::zero(); self.vars];
        for (combo, &p) in self.combos.iter().zip(&self.pivots) {
            x[p] = combo.dot(&b_basis);
        }
        let consistent = self.satisfies(&x, constants);
        (x, consistent)
    }

    fn satisfies(&self, x: &[BigRational], constants: &[u64]) -> bool {
        self.supports.iter().zip(constants).all(|(support, &c)| {
            let s: BigRational = support.iter().map(|&e| &x[e]).sum();
            s == BigRational::from_integer(BigInt::from(c))
        })
    }

    pub fn solve(&self, constants: &[u64]) -> SolveOutcome {
        let (x, consistent) = self.particular(constants);
        if !consistent {
            SolveOutcome::Inconsistent
        } else if self.rank() == self.vars {
            SolveOutcome::Unique { solution: x }
        } else {
            SolveOutcome::Underdetermined { particular: x, kernel_rank: self.kernel_rank() }
        }
    }

    /// Every positive-integer solution. Free variables range over
    /// `[1, c - (|support| - 1)]` for the tightest row `c` containing them,
    /// which bounds every positive solution.
    pub fn natural_solutions(&self, constants: &[u64]) -> Vec<Vec<u32>> {
        let (particular, consistent) = self.particular(constants);
        if !consistent {
            return Vec::new();
        }
        if self.rank() == self.vars {
            return to_natural(&particular).into_iter().collect();
        }
        let free = self.free_variables();
        log::info!(
            "lattice enumeration over {} free variables (rank {} of {})",
            free.len(),
            self.rank(),
            self.vars
        );
        let upper: Vec<u64> = free
            .iter()
            .map(|&f| {
                self.supports
                    .iter()
                    .zip(constants)
                    .filter(|(s, _)| s.contains(&f))
                    .map(|(s, &c)| c.saturating_sub(s.len() as u64 - 1))
                    .min()
                    .expect("every variable appears in some row")
            })
            .collect();

        let mut out = Vec::new();
        let mut assignment = vec![0u64; free.len()];
        self.walk_free(&free, &upper, 0, &mut assignment, &particular, constants, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_free(
        &self,
        free: &[usize],
        upper: &[u64],
        depth: usize,
        assignment: &mut Vec<u64>,
        particular: &[BigRational],
        constants: &[u64],
        out: &mut Vec<Vec<u32>>,
    ) {
        if depth == free.len() {
            let mut x = particular.to_vec();
            for (&f, &val) in free.iter().zip(assignment.iter()) {
                x[f] = BigRational::from_integer(BigInt::from(val));
            }
            for (row, &p) in self.reduced.iter().zip(&self.pivots) {
                let mut v = particular[p].clone();
                for (&f, &val) in free.iter().zip(assignment.iter()) {
                    if !row[f].is_zero() {
                        v -= &row[f] * BigRational::from_integer(BigInt::from(val));
                    }
                }
                x[p] = v;
            }
            if let Some(n) = to_natural(&x) {
                debug_assert!(self.satisfies(&x, constants));
                out.push(n);
            }
            return;
        }
        for val in 1..=upper[depth] {
            assignment[depth] = val;
            self.walk_free(free, upper, depth + 1, assignment, particular, constants, out);
        }
    }
}

pub fn solve_exact(sys: &GeodeticSystem, rhs: &RhsVector) -> Result<SolveOutcome, DiophError> {
    let constants = sys.constants(rhs)?;
    Ok(sys.elimination().solve(&constants))
}

/// All natural solutions for `rhs`: at most one when the matrix has full
/// column rank, otherwise the integer points of the positivity box.
pub fn natural_solutions(sys: &GeodeticSystem, rhs: &RhsVector) -> Result<Vec<Vec<u32>>, DiophError> {
    let constants = sys.constants(rhs)?;
    Ok(sys.elimination().natural_solutions(&constants))
}
