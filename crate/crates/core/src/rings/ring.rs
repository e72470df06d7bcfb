use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::QMatrix;

/// A finitely generated graded-commutative ring with rational structure
/// constants, modeling the cohomology ring of a closed n-manifold. Degree 0
/// is spanned by the unit; everything above the top degree is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedRing {
    n: usize,
    names: Vec<Vec<String>>,
    /// products[d1][d2][i * dim(d2) + j] = coordinates of e_{d1,i} * e_{d2,j}
    /// in degree d1 + d2 (present only when d1 + d2 <= n).
    products: Vec<Vec<Vec<Vec<BigRational>>>>,
    /// Optional per-degree torsion exponents carried as metadata for export
    /// to the spectral-sequence side; never multiplied.
    torsion_exponents: Option<Vec<BigInt>>,
}

impl GradedRing {
    /// Build from a product rule on basis elements. `dims[d]` is the rank in
    /// degree d; the closure returns the coordinate vector of
    /// e_{d1,i} * e_{d2,j} in degree d1 + d2.
    pub fn build<F>(dims: &[usize], mut rule: F) -> Result<Self>
    where
        F: FnMut(usize, usize, usize, usize) -> Vec<BigRational>,
    {
        if dims.is_empty() {
            return Err(Error::Invalid("ring needs at least degree 0".into()));
        }
        let n = dims.len() - 1;
        let names = dims
            .iter()
            .enumerate()
            .map(|(d, &k)| (0..k).map(|i| format!("e{d}_{i}")).collect())
            .collect();
        let mut products = Vec::with_capacity(n + 1);
        for d1 in 0..=n {
            let mut row = Vec::new();
            for d2 in 0..=n - d1 {
                let mut table = Vec::with_capacity(dims[d1] * dims[d2]);
                for i in 0..dims[d1] {
                    for j in 0..dims[d2] {
                        let v = rule(d1, i, d2, j);
                        if v.len() != dims[d1 + d2] {
                            return Err(Error::Shape(format!(
                                "product of ({d1},{i}) and ({d2},{j}) has length {}, expected {}",
                                v.len(),
                                dims[d1 + d2]
                            )));
                        }
                        table.push(v);
                    }
                }
                row.push(table);
            }
            products.push(row);
        }
        Ok(GradedRing { n, names, products, torsion_exponents: None })
    }

    pub fn with_names(mut self, names: Vec<Vec<String>>) -> Result<Self> {
        if names.len() != self.n + 1
            || names.iter().enumerate().any(|(d, ns)| ns.len() != self.dim(d))
        {
            return Err(Error::Shape("basis name table does not match dimensions".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn with_torsion_exponents(mut self, exps: Vec<BigInt>) -> Result<Self> {
        if exps.len() != self.n + 1 {
            return Err(Error::Shape("torsion exponent list must cover degrees 0..=n".into()));
        }
        self.torsion_exponents = Some(exps);
        Ok(self)
    }

    pub fn top_degree(&self) -> usize {
        self.n
    }

    /// Rank in degree d; 0 outside 0..=n.
    pub fn dim(&self, d: usize) -> usize {
        if d > self.n {
            0
        } else {
            self.names[d].len()
        }
    }

    pub fn betti(&self) -> Vec<usize> {
        (0..=self.n).map(|d| self.dim(d)).collect()
    }

    pub fn names(&self, d: usize) -> &[String] {
        &self.names[d]
    }

    pub fn torsion_exponents(&self) -> Option<&[BigInt]> {
        self.torsion_exponents.as_deref()
    }

    pub fn basis_product(&self, d1: usize, i: usize, d2: usize, j: usize) -> &[BigRational] {
        &self.products[d1][d2][i * self.dim(d2) + j]
    }

    pub fn zero(&self, d: usize) -> Vec<BigRational> {
        vec![BigRational::zero(); self.dim(d)]
    }

    pub fn unit(&self) -> Vec<BigRational> {
        vec![BigRational::one()]
    }

    /// Product of two elements; lands in degree d1 + d2 (the empty vector
    /// when that exceeds the top degree).
    pub fn multiply(
        &self,
        d1: usize,
        a: &[BigRational],
        d2: usize,
        b: &[BigRational],
    ) -> Vec<BigRational> {
        assert_eq!(a.len(), self.dim(d1), "element length mismatch in degree {d1}");
        assert_eq!(b.len(), self.dim(d2), "element length mismatch in degree {d2}");
        if d1 + d2 > self.n {
            return vec![];
        }
        let mut out = self.zero(d1 + d2);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (o, p) in out.iter_mut().zip(self.basis_product(d1, i, d2, j)) {
                    *o += &c * p;
                }
            }
        }
        out
    }

    /// k-th power of a degree-d element; returns (degree, coordinates).
    pub fn power(&self, d: usize, a: &[BigRational], k: usize) -> (usize, Vec<BigRational>) {
        let mut deg = 0;
        let mut acc = self.unit();
        for _ in 0..k {
            if deg + d > self.n {
                return (deg + d, vec![]);
            }
            acc = self.multiply(deg, &acc, d, a);
            deg += d;
        }
        (deg, acc)
    }

    /// Product of a list of degree-1 basis elements (by index).
    pub fn one_class_product(&self, indices: &[usize]) -> (usize, Vec<BigRational>) {
        let b1 = self.dim(1);
        let mut deg = 0;
        let mut acc = self.unit();
        for &i in indices {
            assert!(i < b1, "degree-1 basis index out of range");
            if deg + 1 > self.n {
                return (deg + 1, vec![]);
            }
            let mut e = self.zero(1);
            e[i] = BigRational::one();
            acc = self.multiply(deg, &acc, 1, &e);
            deg += 1;
        }
        (deg, acc)
    }

    /// All GradedRing invariants; an empty violation list means valid.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.dim(0) != 1 {
            violations.push(format!("degree 0 has rank {}, expected 1", self.dim(0)));
            return ValidationReport { violations };
        }
        // the degree-0 generator is a two-sided unit
        for d in 0..=self.n {
            for i in 0..self.dim(d) {
                let mut e = self.zero(d);
                e[i] = BigRational::one();
                if self.multiply(0, &self.unit(), d, &e) != e
                    || self.multiply(d, &e, 0, &self.unit()) != e
                {
                    violations.push(format!("unit fails on basis element {i} of degree {d}"));
                }
            }
        }
        // graded commutativity: a*b = (-1)^{|a||b|} b*a
        for d1 in 0..=self.n {
            for d2 in 0..=self.n - d1 {
                let sign = if d1 % 2 == 1 && d2 % 2 == 1 { -1 } else { 1 };
                for i in 0..self.dim(d1) {
                    for j in 0..self.dim(d2) {
                        let ab = self.basis_product(d1, i, d2, j);
                        let ba = self.basis_product(d2, j, d1, i);
                        let ok = ab
                            .iter()
                            .zip(ba)
                            .all(|(x, y)| *x == BigRational::from_integer(sign.into()) * y);
                        if !ok {
                            violations.push(format!(
                                "graded commutativity fails for ({d1},{i}) and ({d2},{j})"
                            ));
                        }
                    }
                }
            }
        }
        // odd-degree squares vanish (characteristic 0)
        for d in (1..=self.n).step_by(2) {
            for i in 0..self.dim(d) {
                if 2 * d <= self.n
                    && self.basis_product(d, i, d, i).iter().any(|x| !x.is_zero())
                {
                    violations.push(format!("odd square of ({d},{i}) is nonzero"));
                }
            }
        }
        // associativity on basis triples with total degree <= n
        for d1 in 0..=self.n {
            for d2 in 0..=self.n - d1 {
                for d3 in 0..=self.n - d1 - d2 {
                    for i in 0..self.dim(d1) {
                        for j in 0..self.dim(d2) {
                            for k in 0..self.dim(d3) {
                                let ab = self.basis_product(d1, i, d2, j).to_vec();
                                let mut ek = self.zero(d3);
                                ek[k] = BigRational::one();
                                let left = self.multiply(d1 + d2, &ab, d3, &ek);
                                let bc = self.basis_product(d2, j, d3, k).to_vec();
                                let mut ei = self.zero(d1);
                                ei[i] = BigRational::one();
                                let right = self.multiply(d1, &ei, d2 + d3, &bc);
                                if left != right {
                                    violations.push(format!(
                                        "associativity fails on ({d1},{i})({d2},{j})({d3},{k})"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().violations.is_empty()
    }

    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(report.violations.join("; ")))
        }
    }

    /// True iff H^n has rank 1 and every pairing H^d x H^{n-d} -> H^n is
    /// nondegenerate.
    pub fn poincare_duality(&self) -> bool {
        if self.dim(self.n) != 1 {
            return false;
        }
        for d in 0..=self.n {
            let (a, b) = (self.dim(d), self.dim(self.n - d));
            if a != b {
                return false;
            }
            let mut pairing = QMatrix::zero(a, b);
            for i in 0..a {
                for j in 0..b {
                    pairing.set(i, j, self.basis_product(d, i, self.n - d, j)[0].clone());
                }
            }
            if pairing.rank() != a {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}
