//! Output encoding. JSON scalars are numbers when they fit in i64 and
//! decimal strings otherwise; non-integer rationals are "p/q" strings.
//! Both formats are byte-identical across runs for the same input.

use chipfire::exact::{Int, Rational};
use chipfire::{ConfigS, IntMatrix, RatMatrix};
use serde_json::Value;

pub fn int_value(i: &Int) -> Value {
    match i64::try_from(i.clone()) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(i.to_string()),
    }
}

pub fn rat_value(r: &Rational) -> Value {
    if r.is_integer() {
        int_value(r.numer())
    } else {
        Value::from(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn int_slice_value(v: &[Int]) -> Value {
    Value::from(v.iter().map(int_value).collect::<Vec<_>>())
}

pub fn rat_slice_value(v: &[Rational]) -> Value {
    Value::from(v.iter().map(rat_value).collect::<Vec<_>>())
}

pub fn int_matrix_value(m: &IntMatrix) -> Value {
    Value::from(
        (0..m.rows())
            .map(|i| int_slice_value(m.row(i)))
            .collect::<Vec<_>>(),
    )
}

pub fn rat_matrix_value(m: &RatMatrix) -> Value {
    Value::from(
        (0..m.rows())
            .map(|i| {
                Value::from(
                    (0..m.cols())
                        .map(|j| rat_value(m.get(i, j)))
                        .collect::<Vec<_>>(),
                )
            })
            .collect::<Vec<_>>(),
    )
}

pub fn config_value(c: &ConfigS) -> Value {
    int_slice_value(c.entries())
}

pub fn rat_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn int_matrix_text(m: &IntMatrix) -> Vec<String> {
    (0..m.rows())
        .map(|i| {
            let row: Vec<String> = m.row(i).iter().map(Int::to_string).collect();
            format!("[{}]", row.join(", "))
        })
        .collect()
}

pub fn rat_matrix_text(m: &RatMatrix) -> Vec<String> {
    (0..m.rows())
        .map(|i| {
            let row: Vec<String> = (0..m.cols()).map(|j| rat_text(m.get(i, j))).collect();
            format!("[{}]", row.join(", "))
        })
        .collect()
}

pub fn rat_slice_text(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(rat_text).collect();
    format!("({})", parts.join(", "))
}
