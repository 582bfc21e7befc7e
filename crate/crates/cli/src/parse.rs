use num_rational::BigRational;
use oddsp_core::IntVector;

use crate::commands::CliError;

pub fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

pub fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// `1,0,-1;0,1,0` → two vectors.
pub fn vectors(s: &str) -> Result<Vec<IntVector>, CliError> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map(IntVector::from)
                .map_err(|_| CliError::Validation(format!("cannot parse vector {t:?}")))
        })
        .collect()
}

/// `3:4,5:6` → rational points.
pub fn points(s: &str) -> Result<Vec<(BigRational, BigRational)>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (x, y) = t.split_once(':').ok_or_else(|| CliError::Validation(format!("point {t:?} is not x:y")))?;
            let parse = |v: &str| {
                v.trim().parse::<BigRational>().map_err(|_| CliError::Validation(format!("cannot parse {v:?}")))
            };
            Ok((parse(x)?, parse(y)?))
        })
        .collect()
}
