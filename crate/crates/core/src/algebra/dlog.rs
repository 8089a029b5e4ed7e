//! Discrete logarithms to a primitive base: a cached dense log table for small
//! fields, baby-step giant-step above.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::arith::{factorize, nth_root_floor};
use crate::algebra::FieldElement;
use crate::error::{Error, Result};

/// Fields up to this order get a precomputed full log table.
pub const DENSE_TABLE_LIMIT: u64 = 1 << 20;

type TableKey = (u64, Vec<u64>, Vec<u64>); // (p, modulus, base coefficients)
type TableCache = Mutex<HashMap<TableKey, Arc<HashMap<u64, u64>>>>;

static TABLES: OnceLock<TableCache> = OnceLock::new();

/// The unique a in [0, p^n − 1) with base^a = target, for a primitive base and
/// nonzero target. Exact: round-trip base^result = target always holds.
pub fn discrete_log(base: &FieldElement, target: &FieldElement) -> Result<u64> {
    if base.field != target.field {
        return Err(Error::MixedFields);
    }
    if target.is_zero() {
        return Err(Error::ZeroTarget);
    }
    if base.is_zero() {
        return Err(Error::NonPrimitiveBase);
    }
    let field = &base.field;
    if !field.is_field() {
        return Err(Error::InvalidParameter("discrete logs require an irreducible modulus".into()));
    }
    if field.order() <= DENSE_TABLE_LIMIT {
        let table = dense_table(base)?;
        table.get(&field.index_of(target)).copied().ok_or(Error::NonPrimitiveBase)
    } else {
        bsgs(base, target)
    }
}

fn dense_table(base: &FieldElement) -> Result<Arc<HashMap<u64, u64>>> {
    let field = &base.field;
    let key = (field.p, field.modulus.clone(), base.coeffs.clone());
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = tables.lock().unwrap().get(&key) {
        return Ok(Arc::clone(t));
    }
    let m = field.order() - 1;
    let mut logs = HashMap::with_capacity(m as usize);
    let mut w = field.one();
    for a in 0..m {
        // A repeated value before p^n − 1 steps means the base is not primitive.
        if logs.insert(field.index_of(&w), a).is_some() {
            return Err(Error::NonPrimitiveBase);
        }
        w = w.mul(base)?;
    }
    let arc = Arc::new(logs);
    tables.lock().unwrap().insert(key, Arc::clone(&arc));
    Ok(arc)
}

/// Baby-step giant-step; verifies primitivity of the base first.
pub(crate) fn bsgs(base: &FieldElement, target: &FieldElement) -> Result<u64> {
    let field = &base.field;
    let m = field.order() - 1;
    let fact = factorize(m)?;
    if base.multiplicative_order(&fact)? != m {
        return Err(Error::NonPrimitiveBase);
    }
    let step = nth_root_floor(m as u128, 2) as u64 + 1;
    let mut baby: HashMap<Vec<u64>, u64> = HashMap::with_capacity(step as usize);
    let mut w = field.one();
    for j in 0..step {
        baby.entry(w.coeffs.clone()).or_insert(j);
        w = w.mul(base)?;
    }
    let giant = base.pow(m - step % m); // base^(−step)
    let mut gamma = target.clone();
    for i in 0..=m / step {
        if let Some(&j) = baby.get(&gamma.coeffs) {
            return Ok((i * step + j) % m);
        }
        gamma = gamma.mul(&giant)?;
    }
    Err(Error::NonPrimitiveBase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{find_primitive, FieldDescriptor};

    fn f9() -> FieldDescriptor {
        FieldDescriptor::new(3, 2, vec![2, 1, 1]).unwrap()
    }

    #[test]
    fn logs_in_f9() {
        let f = f9();
        let theta = f.element(&[0, 1]);
        assert_eq!(discrete_log(&theta, &f.one()).unwrap(), 0);
        assert_eq!(discrete_log(&theta, &theta).unwrap(), 1);
        assert_eq!(discrete_log(&theta, &f.element(&[1, 1])).unwrap(), 7); // x + 1
        assert_eq!(discrete_log(&theta, &f.element(&[2, 1])).unwrap(), 6); // x + 2
    }

    #[test]
    fn log_in_f11() {
        let f = FieldDescriptor::prime(11).unwrap();
        assert_eq!(discrete_log(&f.constant(2), &f.constant(9)).unwrap(), 6);
    }

    #[test]
    fn round_trip_all_exponents() {
        let f = f9();
        let theta = find_primitive(&f).unwrap();
        for e in 0..8 {
            assert_eq!(discrete_log(&theta, &theta.pow(e)).unwrap(), e);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = f9();
        let theta = f.element(&[0, 1]);
        assert_eq!(discrete_log(&theta, &f.zero()), Err(Error::ZeroTarget));
        // x² has order 4 < 8.
        let sq = theta.pow(2);
        assert_eq!(discrete_log(&sq, &theta), Err(Error::NonPrimitiveBase));
        assert_eq!(discrete_log(&f.zero(), &theta), Err(Error::NonPrimitiveBase));
    }

    #[test]
    fn bsgs_agrees_with_table() {
        let f = f9();
        let theta = find_primitive(&f).unwrap();
        for t in 1..9 {
            let target = f.from_index(t);
            assert_eq!(bsgs(&theta, &target).unwrap(), discrete_log(&theta, &target).unwrap());
        }
    }

    #[test]
    fn bsgs_above_table_limit() {
        // F_{2^21} has order above the dense-table threshold.
        let f = FieldDescriptor::with_default_modulus(2, 21).unwrap();
        assert!(f.order() > DENSE_TABLE_LIMIT);
        let theta = find_primitive(&f).unwrap();
        for e in [0u64, 1, 12_345, 2_097_150] {
            assert_eq!(discrete_log(&theta, &theta.pow(e)).unwrap(), e);
        }
    }
}
