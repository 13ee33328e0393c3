use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{smith_normal_form, Matrix, Scalar};
use crate::error::{Error, Result};

/// Domain sizes up to this bound are handled by exhaustive enumeration; larger
/// domains go through the Smith form of the relation lattice.
pub const ENUMERATION_THRESHOLD: u64 = 1_000_000;

/// Homomorphism `prod Z/n_j -> prod Z/m_i` given by an integer matrix.
///
/// Column `j`, row `i` holds the image of the generator of `Z/n_j` in `Z/m_i`.
/// Well-definedness (`m_i | a_ij * n_j`) is checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicHomomorphism<T> {
    matrix: Matrix<T>,
    domain: Vec<T>,
    codomain: Vec<T>,
}

impl<T: Scalar> CyclicHomomorphism<T> {
    pub fn new(matrix: Matrix<T>, domain: Vec<T>, codomain: Vec<T>) -> Result<Self> {
        if matrix.cols() != domain.len() {
            return Err(Error::DimensionMismatch {
                expected: domain.len(),
                found: matrix.cols(),
            });
        }
        if matrix.rows() != codomain.len() {
            return Err(Error::DimensionMismatch {
                expected: codomain.len(),
                found: matrix.rows(),
            });
        }
        if domain.iter().chain(&codomain).any(|x| !x.is_positive()) {
            return Err(Error::NonPositiveModulus);
        }
        for (i, m) in codomain.iter().enumerate() {
            for (j, n) in domain.iter().enumerate() {
                let a = &matrix[(i, j)];
                if !(a.clone() * n.clone()).is_multiple_of(m) {
                    return Err(Error::IllDefinedHom {
                        row: i,
                        col: j,
                        entry: a.to_string(),
                        domain: n.to_string(),
                        codomain: m.to_string(),
                    });
                }
            }
        }
        Ok(CyclicHomomorphism {
            matrix,
            domain,
            codomain,
        })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn domain_moduli(&self) -> &[T] {
        &self.domain
    }

    pub fn codomain_moduli(&self) -> &[T] {
        &self.codomain
    }

    pub fn domain_order(&self) -> BigUint {
        product(&self.domain)
    }

    pub fn codomain_order(&self) -> BigUint {
        product(&self.codomain)
    }

    /// Image of `x`, reduced into `[0, m_i)`.
    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        let y = self.matrix.mul_vec(x)?;
        Ok(y.into_iter()
            .zip(&self.codomain)
            .map(|(v, m)| v.mod_floor(m))
            .collect())
    }

    pub fn reduce_target(&self, t: &[T]) -> Result<Vec<T>> {
        if t.len() != self.codomain.len() {
            return Err(Error::DimensionMismatch {
                expected: self.codomain.len(),
                found: t.len(),
            });
        }
        Ok(t.iter()
            .zip(&self.codomain)
            .map(|(v, m)| v.mod_floor(m))
            .collect())
    }

    /// Kernel size by walking the whole domain. The caller is responsible for
    /// keeping the domain small.
    pub fn kernel_size_by_enumeration(&self) -> BigUint {
        let mut zeros = 0u64;
        self.walk_domain(|_, image_is_zero| {
            if image_is_zero {
                zeros += 1;
            }
            true
        });
        BigUint::from(zeros)
    }

    /// Kernel size as `|domain| * |coker [A | diag(m)]| / |codomain|`.
    pub fn kernel_size_by_smith(&self) -> BigUint {
        let relation = self.relation_matrix();
        let s = smith_normal_form(&relation);
        // diag(m) has full row rank, so the cokernel is finite
        let coker: BigInt = s
            .invariant_factors()
            .iter()
            .map(|d| d.to_bigint().expect("integer"))
            .product();
        let num = BigInt::from(self.domain_order()) * coker;
        let den = BigInt::from(self.codomain_order());
        debug_assert!((&num % &den).is_zero());
        (num / den).to_biguint().expect("nonnegative kernel size")
    }

    /// Solvability of `h(x) = t` by exhaustive search.
    pub fn preimage_by_enumeration(&self, t: &[T]) -> Result<Option<Vec<T>>> {
        let target = self.reduce_target(t)?;
        let mut found = None;
        let (moduli, residues) = self.machine_residues();
        let goal: Option<Vec<u128>> = moduli.as_ref().map(|_| {
            target
                .iter()
                .map(|v| v.to_u128().expect("reduced residue"))
                .collect()
        });
        self.walk_domain_with_image(moduli.as_deref(), residues.as_ref(), |x, image| {
            let hit = match (image, &goal) {
                (Image::Machine(img), Some(goal)) => img == goal.as_slice(),
                (Image::Generic(img), _) => img == target.as_slice(),
                _ => unreachable!(),
            };
            if hit {
                found = Some(x.iter().map(|&v| T::from_u64(v).expect("fits")).collect());
                return false;
            }
            true
        });
        Ok(found)
    }

    /// Solvability of `h(x) = t` through the Smith form of `[A | diag(m)]`.
    pub fn preimage_by_smith(&self, t: &[T]) -> Result<Option<Vec<T>>> {
        let target = self.reduce_target(t)?;
        let relation = self.relation_matrix();
        let s = smith_normal_form(&relation);
        let rhs = s.u.mul_vec(&target)?;
        let diag = s.d.diagonal();
        let mut w = vec![T::zero(); relation.cols()];
        for (i, value) in rhs.iter().enumerate() {
            let d = diag.get(i).cloned().unwrap_or_else(T::zero);
            if d.is_zero() {
                if !value.is_zero() {
                    return Ok(None);
                }
            } else if value.is_multiple_of(&d) {
                w[i] = value.clone() / d;
            } else {
                return Ok(None);
            }
        }
        let z = s.v.mul_vec(&w)?;
        Ok(Some(
            z.into_iter()
                .zip(&self.domain)
                .map(|(v, n)| v.mod_floor(n))
                .collect(),
        ))
    }

    fn relation_matrix(&self) -> Matrix<T> {
        let (rows, cols) = (self.matrix.rows(), self.matrix.cols());
        Matrix::from_fn(rows, cols + rows, |i, j| {
            if j < cols {
                self.matrix[(i, j)].clone()
            } else if j - cols == i {
                self.codomain[i].clone()
            } else {
                T::zero()
            }
        })
    }

    /// Codomain moduli and column residues as machine integers, when every
    /// modulus fits in a `u64` (sums of at most one residue per row never
    /// exceed `u128`).
    fn machine_residues(&self) -> (Option<Vec<u128>>, Option<Vec<Vec<u128>>>) {
        let moduli: Option<Vec<u128>> = self.codomain.iter().map(|m| m.to_u64().map(u128::from)).collect();
        let Some(moduli) = moduli else {
            return (None, None);
        };
        let columns = (0..self.matrix.cols())
            .map(|j| {
                (0..self.matrix.rows())
                    .map(|i| {
                        self.matrix[(i, j)]
                            .mod_floor(&self.codomain[i])
                            .to_u128()
                            .expect("residue fits")
                    })
                    .collect()
            })
            .collect();
        (Some(moduli), Some(columns))
    }

    fn walk_domain(&self, mut visit: impl FnMut(&[u64], bool) -> bool) {
        let (moduli, residues) = self.machine_residues();
        self.walk_domain_with_image(moduli.as_deref(), residues.as_ref(), |x, image| {
            let zero = match image {
                Image::Machine(img) => img.iter().all(|v| *v == 0),
                Image::Generic(img) => img.iter().all(Zero::is_zero),
            };
            visit(x, zero)
        });
    }

    /// Odometer over the domain, maintaining the image incrementally. Wrapping
    /// a coordinate past `n_j - 1` adds its column an `n_j`-th time, which is
    /// zero by well-definedness, so every touched coordinate adds its column.
    fn walk_domain_with_image(
        &self,
        moduli: Option<&[u128]>,
        residues: Option<&Vec<Vec<u128>>>,
        mut visit: impl FnMut(&[u64], Image<'_, T>) -> bool,
    ) {
        let sizes: Vec<u64> = self
            .domain
            .iter()
            .map(|n| n.to_u64().expect("domain too large to enumerate"))
            .collect();
        let cols = sizes.len();
        let mut x = vec![0u64; cols];
        match (moduli, residues) {
            (Some(moduli), Some(columns)) => {
                let mut img = vec![0u128; moduli.len()];
                loop {
                    if !visit(&x, Image::Machine(&img)) {
                        return;
                    }
                    let mut j = 0;
                    loop {
                        if j == cols {
                            return;
                        }
                        for (i, v) in img.iter_mut().enumerate() {
                            *v = (*v + columns[j][i]) % moduli[i];
                        }
                        x[j] += 1;
                        if x[j] < sizes[j] {
                            break;
                        }
                        x[j] = 0;
                        j += 1;
                    }
                }
            }
            _ => {
                let mut img = vec![T::zero(); self.codomain.len()];
                loop {
                    if !visit(&x, Image::Generic(&img)) {
                        return;
                    }
                    let mut j = 0;
                    loop {
                        if j == cols {
                            return;
                        }
                        for (i, v) in img.iter_mut().enumerate() {
                            *v = (v.clone() + self.matrix[(i, j)].clone()).mod_floor(&self.codomain[i]);
                        }
                        x[j] += 1;
                        if x[j] < sizes[j] {
                            break;
                        }
                        x[j] = 0;
                        j += 1;
                    }
                }
            }
        }
    }
}

enum Image<'a, T> {
    Machine(&'a [u128]),
    Generic(&'a [T]),
}

fn product<T: Scalar>(xs: &[T]) -> BigUint {
    xs.iter()
        .map(|x| x.to_bigint().and_then(|b| b.to_biguint()).expect("positive modulus"))
        .fold(BigUint::one(), |acc, x| acc * x)
}

fn small_domain<T: Scalar>(h: &CyclicHomomorphism<T>) -> bool {
    h.domain_order() <= BigUint::from(ENUMERATION_THRESHOLD)
}

/// Number of `x` in the domain with `h(x) = 0`.
pub fn hom_kernel_size<T: Scalar>(h: &CyclicHomomorphism<T>) -> BigUint {
    if small_domain(h) {
        h.kernel_size_by_enumeration()
    } else {
        h.kernel_size_by_smith()
    }
}

/// Some `x` with `h(x) = t`, if the target is in the image.
pub fn hom_image_contains<T: Scalar>(h: &CyclicHomomorphism<T>, t: &[T]) -> Result<Option<Vec<T>>> {
    if small_domain(h) {
        h.preimage_by_enumeration(t)
    } else {
        h.preimage_by_smith(t)
    }
}
