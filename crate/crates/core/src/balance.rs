//! Augmentation multipliers that even out per-language data amounts.

use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_CAP: f64 = 75.0;

#[derive(Debug, Error, PartialEq)]
pub enum BalanceError {
    #[error("no amounts given")]
    Empty,
    #[error("amount for `{language}` must be positive, got {amount}")]
    NonPositive { language: String, amount: f64 },
    #[error("cap must be positive, got {0}")]
    BadCap(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LanguagePlan {
    pub language: String,
    pub amount: f64,
    pub multiplier: f64,
    pub resulting: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalancePlan {
    pub cap: f64,
    pub target: f64,
    pub languages: Vec<LanguagePlan>,
    /// max(resulting) / min(resulting).
    pub imbalance: f64,
}

impl BalancePlan {
    pub fn multipliers(&self) -> Vec<f64> {
        self.languages.iter().map(|l| l.multiplier).collect()
    }

    pub fn resulting(&self) -> Vec<f64> {
        self.languages.iter().map(|l| l.resulting).collect()
    }
}

/// The smallest language is copied `cap` times; every other language is
/// brought up to the same target, never below one copy.
pub fn balance_plan(amounts: &[(String, f64)], cap: f64) -> Result<BalancePlan, BalanceError> {
    if !(cap > 0.0 && cap.is_finite()) {
        return Err(BalanceError::BadCap(cap));
    }
    if amounts.is_empty() {
        return Err(BalanceError::Empty);
    }
    for (language, amount) in amounts {
        if !(*amount > 0.0 && amount.is_finite()) {
            return Err(BalanceError::NonPositive {
                language: language.clone(),
                amount: *amount,
            });
        }
    }
    let min = amounts.iter().map(|(_, a)| *a).fold(f64::INFINITY, f64::min);
    let target = cap * min;
    let languages: Vec<LanguagePlan> = amounts
        .iter()
        .map(|(language, amount)| {
            let multiplier = (target / amount).max(1.0);
            LanguagePlan {
                language: language.clone(),
                amount: *amount,
                multiplier,
                resulting: amount * multiplier,
            }
        })
        .collect();
    let hi = languages.iter().map(|l| l.resulting).fold(f64::NEG_INFINITY, f64::max);
    let lo = languages.iter().map(|l| l.resulting).fold(f64::INFINITY, f64::min);
    Ok(BalancePlan {
        cap,
        target,
        imbalance: hi / lo,
        languages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(xs: &[f64]) -> Vec<(String, f64)> {
        xs.iter().enumerate().map(|(i, &a)| (format!("l{i}"), a)).collect()
    }

    #[test]
    fn two_languages() {
        let p = balance_plan(&named(&[2.0, 1.0]), DEFAULT_CAP).unwrap();
        assert_eq!(p.multipliers(), [37.5, 75.0]);
        assert_eq!(p.resulting(), [75.0, 75.0]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(balance_plan(&[], 75.0), Err(BalanceError::Empty));
        assert!(matches!(
            balance_plan(&named(&[1.0, 0.0]), 75.0),
            Err(BalanceError::NonPositive { .. })
        ));
        assert_eq!(balance_plan(&named(&[1.0]), 0.0), Err(BalanceError::BadCap(0.0)));
    }
}
