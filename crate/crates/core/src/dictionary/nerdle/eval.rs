//! Equation grammar and exact evaluation.
//!
//! An equation is `expr = expr` where `expr` is numerals joined by binary
//! `+ - * /` with the usual precedence and left associativity. Numerals have no
//! leading zeros (except `0` itself) and there is no unary minus.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Zero};
use thiserror::Error;

use crate::word::Symbol;

pub const PLUS: Symbol = 10;
pub const MINUS: Symbol = 11;
pub const TIMES: Symbol = 12;
pub const DIVIDE: Symbol = 13;
pub const EQUALS: Symbol = 14;
/// Digits, the four operators, and `=`.
pub const SYMBOL_COUNT: u64 = 15;
pub const LABELS: [&str; 15] = ["0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "+", "-", "*", "/", "="];

pub fn is_digit(s: Symbol) -> bool {
    s < 10
}

pub fn is_operator(s: Symbol) -> bool {
    (PLUS..=DIVIDE).contains(&s)
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rejection {
    #[error("symbol {0} is not part of the equation alphabet")]
    BadSymbol(Symbol),
    #[error("expected exactly one '=', found {0}")]
    EqualsCount(usize),
    #[error("malformed expression")]
    Malformed,
    #[error("numeral with a leading zero")]
    LeadingZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the two sides are not equal")]
    Unequal,
}

/// Integer types usable as exact rational components.
pub trait ExactInt: Clone + Integer + CheckedAdd + CheckedSub + CheckedMul + From<u8> {}

impl<T: Clone + Integer + CheckedAdd + CheckedSub + CheckedMul + From<u8>> ExactInt for T {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalError {
    DivisionByZero,
    /// The integer type is too narrow for an intermediate value.
    Overflow,
}

// Rejects empty sides, misplaced operators, and stray symbols.
fn check_syntax(side: &[Symbol]) -> Result<(), Rejection> {
    let mut expect_digit = true;
    for &s in side {
        if is_digit(s) {
            expect_digit = false;
        } else if is_operator(s) && !expect_digit {
            expect_digit = true;
        } else {
            return Err(Rejection::Malformed);
        }
    }
    if expect_digit {
        Err(Rejection::Malformed)
    } else {
        Ok(())
    }
}

fn has_leading_zero(side: &[Symbol]) -> bool {
    side.split(|s| is_operator(*s)).any(|num| num.len() > 1 && num[0] == 0)
}

/// Evaluates a syntactically valid side exactly.
pub fn evaluate<T: ExactInt>(side: &[Symbol]) -> Result<Ratio<T>, EvalError> {
    let ten = T::from(10u8);
    let mut sum: Ratio<T> = Ratio::zero();
    let mut negate = false;
    let mut term: Option<Ratio<T>> = None;
    let mut factor_op = TIMES;
    let mut i = 0;
    loop {
        let mut num = T::zero();
        while i < side.len() && is_digit(side[i]) {
            num = num
                .checked_mul(&ten)
                .and_then(|n| n.checked_add(&T::from(side[i] as u8)))
                .ok_or(EvalError::Overflow)?;
            i += 1;
        }
        let num = Ratio::from_integer(num);
        term = Some(match term {
            None => num,
            Some(t) if factor_op == TIMES => t.checked_mul(&num).ok_or(EvalError::Overflow)?,
            Some(t) => {
                if num.is_zero() {
                    return Err(EvalError::DivisionByZero);
                }
                t.checked_div(&num).ok_or(EvalError::Overflow)?
            }
        });
        let op = side.get(i).copied();
        i += 1;
        if op == Some(TIMES) || op == Some(DIVIDE) {
            factor_op = op.unwrap();
            continue;
        }
        let t = term.take().unwrap();
        sum = if negate { sum.checked_sub(&t) } else { sum.checked_add(&t) }.ok_or(EvalError::Overflow)?;
        match op {
            None => return Ok(sum),
            Some(o) => negate = o == MINUS,
        }
        factor_op = TIMES;
    }
}

/// A valid equation and the common value of its sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub tokens: Vec<Symbol>,
    pub value: BigRational,
}

fn widen(r: Ratio<i128>) -> BigRational {
    Ratio::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn side_values<T: ExactInt>(lhs: &[Symbol], rhs: &[Symbol]) -> Result<(Ratio<T>, Ratio<T>), EvalError> {
    Ok((evaluate::<T>(lhs)?, evaluate::<T>(rhs)?))
}

/// Checks the grammar, then evaluates both sides exactly. `i128` rationals are
/// tried first and big integers take over on overflow.
pub fn validate(tokens: &[Symbol]) -> Result<Equation, Rejection> {
    if let Some(s) = tokens.iter().find(|s| **s >= SYMBOL_COUNT) {
        return Err(Rejection::BadSymbol(*s));
    }
    let eqs = tokens.iter().filter(|s| **s == EQUALS).count();
    if eqs != 1 {
        return Err(Rejection::EqualsCount(eqs));
    }
    let at = tokens.iter().position(|s| *s == EQUALS).unwrap();
    let (lhs, rhs) = (&tokens[..at], &tokens[at + 1..]);
    check_syntax(lhs)?;
    check_syntax(rhs)?;
    if has_leading_zero(lhs) || has_leading_zero(rhs) {
        return Err(Rejection::LeadingZero);
    }
    let (a, b) = match side_values::<i128>(lhs, rhs) {
        Ok((a, b)) => (widen(a), widen(b)),
        Err(EvalError::DivisionByZero) => return Err(Rejection::DivisionByZero),
        Err(EvalError::Overflow) => match side_values::<BigInt>(lhs, rhs) {
            Ok(v) => v,
            Err(_) => return Err(Rejection::DivisionByZero),
        },
    };
    if a == b {
        Ok(Equation { tokens: tokens.to_vec(), value: a })
    } else {
        Err(Rejection::Unequal)
    }
}

pub fn is_valid(tokens: &[Symbol]) -> bool {
    validate(tokens).is_ok()
}

pub fn parse(text: &str) -> Option<Vec<Symbol>> {
    text.chars()
        .map(|c| match c {
            '0'..='9' => Some(c as u64 - '0' as u64),
            '+' => Some(PLUS),
            '-' | '−' => Some(MINUS),
            '*' | '×' => Some(TIMES),
            '/' | '÷' => Some(DIVIDE),
            '=' => Some(EQUALS),
            _ => None,
        })
        .collect()
}

pub fn render(tokens: &[Symbol]) -> String {
    tokens.iter().map(|s| LABELS.get(*s as usize).copied().unwrap_or("?")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(text: &str) -> Result<Equation, Rejection> {
        validate(&parse(text).unwrap())
    }

    #[test]
    fn examples() {
        assert!(check("12+35=47").is_ok());
        assert!(check("10=10").is_ok());
        assert!(check("1+2=3").is_ok());
        assert_eq!(check("01+1=2"), Err(Rejection::LeadingZero));
        assert_eq!(check("1/0=0"), Err(Rejection::DivisionByZero));
        assert_eq!(check("1+2=4"), Err(Rejection::Unequal));
        assert_eq!(check("1+2"), Err(Rejection::EqualsCount(0)));
        assert_eq!(check("1=1=1"), Err(Rejection::EqualsCount(2)));
        assert_eq!(check("-1+2=1"), Err(Rejection::Malformed));
        assert_eq!(check("1+=1"), Err(Rejection::Malformed));
    }

    #[test]
    fn precedence_and_associativity() {
        assert!(check("2+3*4=14").is_ok());
        assert!(check("8-3-2=3").is_ok());
        assert!(check("8/4/2=1").is_ok());
        assert!(check("1/3+1/3=2/3").is_ok());
        assert!(check("7/2*2=7").is_ok());
        assert!(check("3=6/2").is_ok());
    }

    #[test]
    fn big_values_fall_back_to_bigint() {
        let big = "99999999999999999999*99999999999999999999=9999999999999999999800000000000000000001";
        assert!(check(big).is_ok());
    }

    #[test]
    fn generic_evaluation_agrees() {
        let side = parse("1/3-5*7/2+10").unwrap();
        let a = evaluate::<i128>(&side).unwrap();
        let b = evaluate::<BigInt>(&side).unwrap();
        assert_eq!(widen(a), b);
        assert_eq!(a, Ratio::new(-43, 6));
    }
}
