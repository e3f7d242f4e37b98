use std::fmt;

use serde::Serialize;

use super::AlgebraData;
use crate::subset::MAX_CARRIER;

/// The axioms (and redundant derived laws) checked by [`validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    MeetIdempotent,
    MeetCommutative,
    MeetAssociative,
    JoinIdempotent,
    JoinCommutative,
    JoinAssociative,
    Absorption,
    BottomIsLeast,
    TopIsGreatest,
    /// `join` agrees with the least upper bound of the order derived from `meet`.
    JoinIsLeastUpperBound,
    MonoCommutative,
    MonoAssociative,
    MonoUnit,
    Residuation,
    /// `1 -> x = x`, `x -> 1 = 1`
    R1,
    /// `x <= y` iff `x -> y = 1`
    R2,
    /// antitone/isotone behaviour of `->` and `mono`
    R3,
    /// `x mono (x -> y) <= y`
    R4,
    /// `x mono y <= x meet y`, `x <= y -> x`
    R5,
    /// `x -> (y -> z) = (x mono y) -> z = y -> (x -> z)`
    R6,
    /// `x join (y mono z) >= (x join y) mono (x join z)` and its power form
    R7,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// The elements instantiating the failing law, in the law's variable order.
    pub witness: Vec<usize>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at {:?}", self.axiom, self.witness)
    }
}

/// Outcome of [`validate`]. Structural problems are reported separately from
/// axiom violations; axioms are only checked once the tables are well formed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub structural: Vec<String>,
    pub violations: Vec<AxiomViolation>,
    /// Set for the one-element algebra.
    pub trivial: bool,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.structural.is_empty() && self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok{}", if self.trivial { " (trivial)" } else { "" });
        }
        let parts: Vec<String> = self
            .structural
            .iter()
            .cloned()
            .chain(self.violations.iter().map(ToString::to_string))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn check_shape(data: &AlgebraData) -> Vec<String> {
    let n = data.size;
    let mut errs = Vec::new();
    if n == 0 {
        errs.push("size must be positive".to_string());
        return errs;
    }
    if n > MAX_CARRIER {
        errs.push(format!("size {n} exceeds the supported maximum {MAX_CARRIER}"));
        return errs;
    }
    for (name, table) in [
        ("meet", &data.meet),
        ("join", &data.join),
        ("mono", &data.mono),
        ("impl", &data.imp),
    ] {
        if table.len() != n {
            errs.push(format!("{name} table has {} rows, expected {n}", table.len()));
            continue;
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                errs.push(format!("{name} row {i} has {} entries, expected {n}", row.len()));
            } else if let Some((j, v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                errs.push(format!("{name}[{i}][{j}] = {v} is out of range 0..{n}"));
            }
        }
    }
    if data.bottom >= n {
        errs.push(format!("bottom {} is out of range 0..{n}", data.bottom));
    }
    if data.top >= n {
        errs.push(format!("top {} is out of range 0..{n}", data.top));
    }
    errs
}

/// Checks the residuated-lattice axioms by exhaustive evaluation, reporting
/// the first witness found for every failing law.
pub fn validate(data: &AlgebraData) -> ValidationReport {
    let structural = check_shape(data);
    if !structural.is_empty() {
        return ValidationReport {
            structural,
            ..Default::default()
        };
    }
    let n = data.size;
    let (b, t) = (data.bottom, data.top);
    let meet = |x: usize, y: usize| data.meet[x][y];
    let join = |x: usize, y: usize| data.join[x][y];
    let mono = |x: usize, y: usize| data.mono[x][y];
    let imp = |x: usize, y: usize| data.imp[x][y];
    let leq = |x: usize, y: usize| meet(x, y) == x;
    let power = |x: usize, k: u32| (0..k).fold(t, |acc, _| mono(acc, x));

    let mut violations: Vec<AxiomViolation> = Vec::new();
    let mut record = |axiom: Axiom, witness: &[usize]| {
        if !violations.iter().any(|v| v.axiom == axiom) {
            violations.push(AxiomViolation {
                axiom,
                witness: witness.to_vec(),
            });
        }
    };

    for x in 0..n {
        if meet(x, x) != x {
            record(Axiom::MeetIdempotent, &[x]);
        }
        if join(x, x) != x {
            record(Axiom::JoinIdempotent, &[x]);
        }
        if meet(b, x) != b {
            record(Axiom::BottomIsLeast, &[x]);
        }
        if join(t, x) != t {
            record(Axiom::TopIsGreatest, &[x]);
        }
        if mono(t, x) != x {
            record(Axiom::MonoUnit, &[x]);
        }
        if imp(t, x) != x || imp(x, t) != t {
            record(Axiom::R1, &[x]);
        }
    }

    for x in 0..n {
        for y in 0..n {
            if meet(x, y) != meet(y, x) {
                record(Axiom::MeetCommutative, &[x, y]);
            }
            if join(x, y) != join(y, x) {
                record(Axiom::JoinCommutative, &[x, y]);
            }
            if mono(x, y) != mono(y, x) {
                record(Axiom::MonoCommutative, &[x, y]);
            }
            if meet(x, join(x, y)) != x || join(x, meet(x, y)) != x {
                record(Axiom::Absorption, &[x, y]);
            }
            let j = join(x, y);
            if !leq(x, j) || !leq(y, j) || (0..n).any(|z| leq(x, z) && leq(y, z) && !leq(j, z)) {
                record(Axiom::JoinIsLeastUpperBound, &[x, y]);
            }
            if leq(x, y) != (imp(x, y) == t) {
                record(Axiom::R2, &[x, y]);
            }
            if !leq(mono(x, imp(x, y)), y) {
                record(Axiom::R4, &[x, y]);
            }
            if !leq(mono(x, y), meet(x, y)) || !leq(x, imp(y, x)) {
                record(Axiom::R5, &[x, y]);
            }
            let xy = join(x, y);
            for m in 1..=3u32 {
                for k in 1..=3u32 {
                    if !leq(power(xy, m * k), join(power(x, m), power(y, k))) {
                        record(Axiom::R7, &[x, y, m as usize, k as usize]);
                    }
                }
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if meet(meet(x, y), z) != meet(x, meet(y, z)) {
                    record(Axiom::MeetAssociative, &[x, y, z]);
                }
                if join(join(x, y), z) != join(x, join(y, z)) {
                    record(Axiom::JoinAssociative, &[x, y, z]);
                }
                if mono(mono(x, y), z) != mono(x, mono(y, z)) {
                    record(Axiom::MonoAssociative, &[x, y, z]);
                }
                if leq(mono(x, y), z) != leq(x, imp(y, z)) {
                    record(Axiom::Residuation, &[x, y, z]);
                }
                if leq(x, y)
                    && !(leq(imp(y, z), imp(x, z))
                        && leq(imp(z, x), imp(z, y))
                        && leq(mono(x, z), mono(y, z)))
                {
                    record(Axiom::R3, &[x, y, z]);
                }
                let left = imp(x, imp(y, z));
                if left != imp(mono(x, y), z) || left != imp(y, imp(x, z)) {
                    record(Axiom::R6, &[x, y, z]);
                }
                if !leq(mono(join(x, y), join(x, z)), join(x, mono(y, z))) {
                    record(Axiom::R7, &[x, y, z]);
                }
            }
        }
    }

    ValidationReport {
        structural: Vec::new(),
        violations,
        trivial: n == 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{goedel_chain, lukasiewicz_chain};

    #[test]
    fn one_element_is_ok_and_trivial() {
        let data = AlgebraData {
            size: 1,
            meet: vec![vec![0]],
            join: vec![vec![0]],
            mono: vec![vec![0]],
            imp: vec![vec![0]],
            bottom: 0,
            top: 0,
        };
        let r = validate(&data);
        assert!(r.is_ok());
        assert!(r.trivial);
    }

    #[test]
    fn mutated_goedel_impl_breaks_residuation() {
        let mut data = goedel_chain(3).to_data();
        data.imp[2][0] = 2;
        let r = validate(&data);
        let v = r
            .violations
            .iter()
            .find(|v| v.axiom == Axiom::Residuation)
            .expect("residuation must fail");
        let (x, y, z) = (v.witness[0], v.witness[1], v.witness[2]);
        let leq = |a: usize, b: usize| data.meet[a][b] == a;
        assert_ne!(leq(data.mono[x][y], z), leq(x, data.imp[y][z]));
    }

    #[test]
    fn structural_errors_are_separate() {
        let mut data = lukasiewicz_chain(3).to_data();
        data.mono[1].pop();
        let r = validate(&data);
        assert!(!r.structural.is_empty());
        assert!(r.violations.is_empty());

        let mut data = lukasiewicz_chain(3).to_data();
        data.join[0][1] = 7;
        assert!(validate(&data).structural[0].contains("out of range"));
    }

    #[test]
    fn join_must_agree_with_meet_order() {
        // Replace join of G3 by the meet table: the lattice order from meet
        // then disagrees with join.
        let mut data = goedel_chain(3).to_data();
        data.join = data.meet.clone();
        let r = validate(&data);
        assert!(r.violations.iter().any(|v| v.axiom == Axiom::JoinIsLeastUpperBound));
    }
}
