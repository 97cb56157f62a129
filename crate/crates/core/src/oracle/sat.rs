//! Exactly-one-in-three satisfiability: formulas and brute force.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, GrcError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Literal {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Literal {
        Literal { var, positive: false }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }

    /// 1-based signed form used by the JSON format.
    pub fn to_signed(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_signed(lit: i64) -> Result<Literal> {
        if lit == 0 {
            return invalid("literal 0 is not allowed");
        }
        Ok(Literal { var: lit.unsigned_abs() as usize - 1, positive: lit > 0 })
    }
}

/// A formula in which every clause needs exactly one true literal.
///
/// JSON: `{"vars": 4, "clauses": [[-1, 3], [1, 2, 4]]}` with 1-based signed
/// literals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FormulaDoc", into = "FormulaDoc")]
pub struct OneInThreeInstance {
    pub variable_count: usize,
    pub clauses: Vec<Vec<Literal>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormulaDoc {
    vars: usize,
    clauses: Vec<Vec<i64>>,
}

impl TryFrom<FormulaDoc> for OneInThreeInstance {
    type Error = GrcError;

    fn try_from(doc: FormulaDoc) -> Result<Self> {
        let clauses = doc
            .clauses
            .into_iter()
            .map(|c| c.into_iter().map(Literal::from_signed).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        OneInThreeInstance::new(doc.vars, clauses)
    }
}

impl From<OneInThreeInstance> for FormulaDoc {
    fn from(f: OneInThreeInstance) -> FormulaDoc {
        FormulaDoc {
            vars: f.variable_count,
            clauses: f.clauses.iter().map(|c| c.iter().map(|l| l.to_signed()).collect()).collect(),
        }
    }
}

impl OneInThreeInstance {
    /// Checks variable ranges and clause lengths (2 or 3).
    pub fn new(variable_count: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            if !(2..=3).contains(&clause.len()) {
                return invalid(format!("clause {j} has {} literals; expected 2 or 3", clause.len()));
            }
            if let Some(l) = clause.iter().find(|l| l.var >= variable_count) {
                return invalid(format!("clause {j} uses variable {} of {variable_count}", l.var + 1));
            }
        }
        Ok(OneInThreeInstance { variable_count, clauses })
    }

    /// `(positive, negative)` occurrence counts per variable.
    pub fn occurrences(&self) -> Vec<(usize, usize)> {
        let mut occ = vec![(0, 0); self.variable_count];
        for l in self.clauses.iter().flatten() {
            if l.positive {
                occ[l.var].0 += 1;
            } else {
                occ[l.var].1 += 1;
            }
        }
        occ
    }

    /// Every variable occurs exactly twice positively and once negatively.
    pub fn validate_21(&self) -> Result<()> {
        match self.occurrences().iter().position(|&o| o != (2, 1)) {
            Some(i) => invalid(format!("variable {} occurs {:?} times (positive, negative)", i + 1, self.occurrences()[i])),
            None => Ok(()),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.clauses.iter().flatten().all(|l| l.positive)
    }

    /// Every clause has exactly one true literal.
    pub fn exactly_one(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.variable_count
            && self.clauses.iter().all(|c| c.iter().filter(|l| l.eval(assignment)).count() == 1)
    }
}

/// First assignment (in binary counting order, variable 0 as the low bit)
/// meeting the exactly-one predicate and, when `k` is given, with exactly
/// `k` true variables. Meant for up to about 25 variables.
pub fn sat_brute(f: &OneInThreeInstance, k: Option<usize>) -> Option<Vec<bool>> {
    let n = f.variable_count;
    assert!(n < 64, "brute force over {n} variables is out of reach");
    let masks: Vec<Vec<(usize, bool)>> = f.clauses.iter().map(|c| c.iter().map(|l| (l.var, l.positive)).collect()).collect();
    (0..1u64 << n)
        .filter(|m| k.is_none_or(|k| m.count_ones() as usize == k))
        .find(|&m| masks.iter().all(|c| c.iter().filter(|&&(v, pos)| (m >> v & 1 == 1) == pos).count() == 1))
        .map(|m| (0..n).map(|v| m >> v & 1 == 1).collect())
}
