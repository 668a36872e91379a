//! Spanning determinants λ_I = det(X_{w₁}, …, X_{wₙ}).

use crate::table::WordTable;
use crate::word::Word;
use crate::VfError;
use polyalg::{det_ratfn, det_rational, Rational, RationalFn};

/// The determinant as a rational function of the chart variables.
pub fn lambda_i_symbolic(table: &WordTable, tuple: &[Word]) -> Result<RationalFn, VfError> {
    let rows = collect_rows(table, tuple)?;
    Ok(det_ratfn(&rows).expect("rows form a square matrix"))
}

/// The determinant with the coordinates fixed at `point`. Parameters stay
/// symbolic, so the result is constant exactly when none remain.
pub fn lambda_i(table: &WordTable, tuple: &[Word], point: &[Rational]) -> Result<RationalFn, VfError> {
    let n = table.dim();
    if point.len() != n {
        return Err(VfError::PointLength { expected: n, got: point.len() });
    }
    let mut assignment: Vec<Option<Rational>> = point.iter().cloned().map(Some).collect();
    assignment.resize(table.nvars(), None);

    let symbolic = collect_rows(table, tuple)?;
    let mut rows = Vec::with_capacity(n);
    for (row, word) in symbolic.iter().zip(tuple) {
        let evaluated: Option<Vec<RationalFn>> =
            row.iter().map(|c| c.eval_partial(&assignment)).collect();
        match evaluated {
            Some(r) => rows.push(r),
            None => return Err(VfError::PoleAtPoint(format!("X_{word}"))),
        }
    }

    let constants: Option<Vec<Vec<Rational>>> = rows
        .iter()
        .map(|row| row.iter().map(|c| c.constant_value()).collect())
        .collect();
    if let Some(m) = constants {
        let d = det_rational(&m).expect("rows form a square matrix");
        return Ok(RationalFn::constant(table.nvars(), d));
    }
    Ok(det_ratfn(&rows).expect("rows form a square matrix"))
}

fn collect_rows(table: &WordTable, tuple: &[Word]) -> Result<Vec<Vec<RationalFn>>, VfError> {
    let n = table.dim();
    if tuple.len() != n {
        return Err(VfError::TupleSize { expected: n, got: tuple.len() });
    }
    let mut rows = Vec::with_capacity(n);
    for word in tuple {
        let field = table
            .get(word)
            .ok_or_else(|| VfError::MissingWord(word.to_string()))?;
        rows.push(field.components().to_vec());
    }
    Ok(rows)
}
