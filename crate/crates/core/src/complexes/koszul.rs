use super::{BasedComplex, Generator, GradedFreeModule, SparseMatrix};
use crate::error::{Error, Result};
use crate::ring::Polynomial;

impl BasedComplex {
    /// Tensor product with the Koszul complex `0 -> S(-deg v) --v--> S`.
    ///
    /// Position `i` of the result is `F_i + F_{i-1}(-deg v)`, in that order.
    /// A generator `b` of `F_{i-1}` tensored with the Koszul generator maps to
    /// `A_{i-1} b` in the shifted summand plus `(-1)^(i-1) v b` in `F_{i-1}`.
    pub fn tensor_koszul_variable(&self, var: usize) -> Result<BasedComplex> {
        let nvars = self.ring.nvars();
        if var >= nvars {
            return Err(Error::DimensionMismatch(format!(
                "variable {var} out of range"
            )));
        }
        let ring = &self.ring;
        let v = Polynomial::variable(ring, var);
        let vdeg = self.grading.var_degree(var, nvars)?;
        let name = ring.name(var);
        let t = self.length();

        let shifted = |m: &GradedFreeModule| -> Vec<Generator> {
            m.generators()
                .iter()
                .map(|g| Generator::new(format!("{}|{name}", g.label), &g.degree + &vdeg))
                .collect()
        };
        let mut modules = Vec::with_capacity(t + 2);
        for i in 0..=t + 1 {
            let mut gens = Vec::new();
            if i <= t {
                gens.extend(self.modules[i].generators().iter().cloned());
            }
            if i >= 1 {
                gens.extend(shifted(&self.modules[i - 1]));
            }
            modules.push(GradedFreeModule::new(gens)?);
        }

        let rank = |i: usize| if i <= t { self.modules[i].rank() } else { 0 };
        let mut maps = Vec::with_capacity(t + 1);
        for i in 1..=t + 1 {
            let (rows, cols) = (modules[i - 1].rank(), modules[i].rank());
            let mut m = SparseMatrix::zero(rows, cols);
            if i <= t {
                for (r, c, p) in self.map(i).entries() {
                    m.set(r, c, p.clone());
                }
            }
            let col_offset = rank(i);
            let sign = if (i - 1) % 2 == 0 { v.clone() } else { -&v };
            for q in 0..rank(i - 1) {
                m.set(q, col_offset + q, sign.clone());
            }
            if i >= 2 {
                let row_offset = rank(i - 1);
                for (r, c, p) in self.map(i - 1).entries() {
                    m.set(row_offset + r, col_offset + c, p.clone());
                }
            }
            maps.push(m);
        }
        BasedComplex::with_killed(
            ring.clone(),
            self.grading.clone(),
            self.killed.clone(),
            modules,
            maps,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{deg, koszul};
    use super::super::{module_from_degrees, BasedComplex, SparseMatrix};
    use crate::ring::{Field, Grading, MultiDegree, Polynomial, Ring};

    #[test]
    fn koszul_on_x_and_y() {
        let r = Ring::new(["x", "y"], Field::Rational).unwrap();
        let k = koszul(&r, &["x", "y"]);
        assert_eq!(k.ranks(), vec![1, 2, 1]);
        assert_eq!(k.compose_check().unwrap(), None);
        let degrees: Vec<Vec<i64>> = k
            .modules()
            .iter()
            .map(|m| m.generators().iter().map(|g| g.degree.0[0]).collect())
            .collect();
        assert_eq!(degrees, vec![vec![0], vec![1, 1], vec![2]]);
    }

    #[test]
    fn principal_tensor_koszul_degrees() {
        let r = Ring::new(["x", "y", "z"], Field::Rational).unwrap();
        let yz = Polynomial::parse(&r, "y*z").unwrap();
        let c = BasedComplex::new(
            r.clone(),
            Grading::Total,
            vec![
                module_from_degrees(vec![deg(0)]),
                module_from_degrees(vec![deg(2)]),
            ],
            vec![SparseMatrix::from_rows(vec![vec![yz]], 1).unwrap()],
        )
        .unwrap();
        let t = c.tensor_koszul_variable(0).unwrap();
        assert_eq!(t.ranks(), vec![1, 2, 1]);
        let degrees: Vec<Vec<MultiDegree>> = t
            .modules()
            .iter()
            .map(|m| m.generators().iter().map(|g| g.degree.clone()).collect())
            .collect();
        assert_eq!(
            degrees,
            vec![vec![deg(0)], vec![deg(2), deg(1)], vec![deg(3)]]
        );
        assert_eq!(t.compose_check().unwrap(), None);
    }
}
