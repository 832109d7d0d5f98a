//! Tokens, exact-rational evaluation, and equation checking.
//!
//! Equations are sequences of whitespace-separated surface tokens: positive
//! integers, the four binary operators `+ - * /`, `==`, and parentheses.
//! Evaluation is exact rational arithmetic (true division), so
//! `- 6 / 10 + 9 / 5 * 2 == 3` holds. Anything that is not part of the
//! arithmetic sub-language (action markers, tags, malformed units) becomes a
//! [`Token::Special`] and is rejected by the evaluator but never crashes it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Exact rational value; always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// One surface token.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    /// A positive integer rendered as a single token (`10` is one token).
    Number(u64),
    Plus,
    Minus,
    Times,
    Divide,
    Eq,
    LParen,
    RParen,
    /// Anything else: `<pos_k>`, `<done>`, tag names, or stray units.
    Special(String),
}

impl Token {
    pub fn special(s: impl Into<String>) -> Self {
        Token::Special(s.into())
    }

    pub fn is_number(&self) -> bool {
        matches!(self, Token::Number(_))
    }

    pub fn is_operator(&self) -> bool {
        matches!(self, Token::Plus | Token::Minus | Token::Times | Token::Divide)
    }

    /// Parse a single whitespace-free unit. Total: unknown units become
    /// `Special`. A digit string is a `Number` only if it round-trips (no
    /// leading zeros, fits in `u64`, and is positive).
    pub fn parse_unit(unit: &str) -> Token {
        match unit {
            "+" => return Token::Plus,
            "-" => return Token::Minus,
            "*" => return Token::Times,
            "/" => return Token::Divide,
            "==" => return Token::Eq,
            "(" => return Token::LParen,
            ")" => return Token::RParen,
            _ => {}
        }
        if unit.bytes().all(|b| b.is_ascii_digit()) {
            if let Ok(n) = unit.parse::<u64>() {
                if n > 0 && n.to_string() == unit {
                    return Token::Number(n);
                }
            }
        }
        Token::Special(unit.to_string())
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Number(n) => write!(f, "{n}"),
            Token::Plus => f.write_str("+"),
            Token::Minus => f.write_str("-"),
            Token::Times => f.write_str("*"),
            Token::Divide => f.write_str("/"),
            Token::Eq => f.write_str("=="),
            Token::LParen => f.write_str("("),
            Token::RParen => f.write_str(")"),
            Token::Special(s) => f.write_str(s),
        }
    }
}

/// An ordered sequence of tokens. The canonical surface rendering is
/// single-space-separated token text; `detokenize(tokenize(s))` normalizes
/// whitespace only.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TokenSeq(pub Vec<Token>);

impl TokenSeq {
    pub fn new(tokens: Vec<Token>) -> Self {
        TokenSeq(tokens)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Token> {
        self.0.iter()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    /// Render to the canonical single-space-separated surface form.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&t.to_string());
        }
        out
    }

    /// The subsequence of `Number` tokens, in order.
    pub fn numbers(&self) -> TokenSeq {
        TokenSeq(self.0.iter().filter(|t| t.is_number()).cloned().collect())
    }
}

impl fmt::Display for TokenSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::ops::Index<usize> for TokenSeq {
    type Output = Token;
    fn index(&self, i: usize) -> &Token {
        &self.0[i]
    }
}

impl FromIterator<Token> for TokenSeq {
    fn from_iter<I: IntoIterator<Item = Token>>(iter: I) -> Self {
        TokenSeq(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a TokenSeq {
    type Item = &'a Token;
    type IntoIter = std::slice::Iter<'a, Token>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromStr for TokenSeq {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(tokenize(s))
    }
}

/// Split on whitespace and parse each unit. Total over any input.
pub fn tokenize(text: &str) -> TokenSeq {
    TokenSeq(text.split_whitespace().map(Token::parse_unit).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("malformed expression: {0}")]
    Malformed(&'static str),
    #[error("division by zero")]
    DivisionByZero,
}

/// Evaluate an arithmetic expression (no `==`) to an exact rational.
///
/// Standard precedence: `*` and `/` bind tighter than `+` and `-`, equal
/// precedence associates left, parentheses override. A unary minus is
/// permitted only at the start of the expression or immediately after `(`,
/// and applies to the following number or parenthesized group.
pub fn eval_expr(expr: &TokenSeq) -> Result<Rational, EvalError> {
    let mut p = Parser { tokens: expr.tokens(), pos: 0 };
    let value = p.expression()?;
    if p.pos != p.tokens.len() {
        return Err(EvalError::Malformed("trailing tokens"));
    }
    Ok(value)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    // Entry point for the whole expression and for each parenthesized group;
    // these are the only contexts where a leading unary minus is legal.
    fn expression(&mut self) -> Result<Rational, EvalError> {
        let negate = matches!(self.peek(), Some(Token::Minus));
        if negate {
            self.bump();
        }
        let mut first = self.primary()?;
        if negate {
            first = -first;
        }
        self.binary_rhs(first, 0)
    }

    // Precedence climbing over the binary operators.
    fn binary_rhs(&mut self, mut lhs: Rational, min_prec: u8) -> Result<Rational, EvalError> {
        loop {
            let (prec, op) = match self.peek() {
                Some(t @ (Token::Plus | Token::Minus)) => (1, t),
                Some(t @ (Token::Times | Token::Divide)) => (2, t),
                Some(Token::RParen) | None => return Ok(lhs),
                Some(_) => return Err(EvalError::Malformed("expected operator")),
            };
            if prec < min_prec {
                return Ok(lhs);
            }
            let op = op.clone();
            self.bump();
            let mut rhs = self.primary()?;
            // Left association: fold in any tighter-binding tail first.
            while let Some(Token::Times | Token::Divide) = self.peek() {
                if prec >= 2 {
                    break;
                }
                rhs = self.binary_rhs(rhs, 2)?;
            }
            lhs = match op {
                Token::Plus => lhs + rhs,
                Token::Minus => lhs - rhs,
                Token::Times => lhs * rhs,
                Token::Divide => {
                    if rhs.is_zero() {
                        return Err(EvalError::DivisionByZero);
                    }
                    lhs / rhs
                }
                _ => unreachable!(),
            };
        }
    }

    fn primary(&mut self) -> Result<Rational, EvalError> {
        match self.bump() {
            Some(Token::Number(n)) => Ok(Rational::from_integer(BigInt::from(*n))),
            Some(Token::LParen) => {
                let inner = self.expression()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(EvalError::Malformed("unbalanced parenthesis")),
                }
            }
            Some(Token::Special(_)) => Err(EvalError::Malformed("special token in expression")),
            Some(_) => Err(EvalError::Malformed("expected number or group")),
            None => Err(EvalError::Malformed("dangling operator or empty expression")),
        }
    }
}

/// True iff the sequence contains exactly one `==`, both sides parse as
/// arithmetic expressions, and the two sides are exactly equal.
///
/// Total: malformed input yields `false`, never an error, so arbitrary model
/// output can be scored.
pub fn check_equation(eq: &TokenSeq) -> bool {
    let mut split = None;
    for (i, t) in eq.iter().enumerate() {
        if *t == Token::Eq {
            if split.is_some() {
                return false;
            }
            split = Some(i);
        }
    }
    let Some(i) = split else { return false };
    let lhs = TokenSeq(eq.tokens()[..i].to_vec());
    let rhs = TokenSeq(eq.tokens()[i + 1..].to_vec());
    match (eval_expr(&lhs), eval_expr(&rhs)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// `n` as an exact rational.
pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The value as a positive `u64` if the rational is a whole number in range.
pub fn as_positive_integer(r: &Rational) -> Option<u64> {
    if !r.is_integer() || !r.is_positive() {
        return None;
    }
    let n = r.to_integer();
    u64::try_from(n).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> TokenSeq {
        tokenize(s)
    }

    #[test]
    fn tokenize_surface_forms() {
        assert_eq!(
            seq("2 / 7 * 7 == 2").0,
            vec![
                Token::Number(2),
                Token::Divide,
                Token::Number(7),
                Token::Times,
                Token::Number(7),
                Token::Eq,
                Token::Number(2)
            ]
        );
        assert_eq!(seq("").0, vec![]);
        assert_eq!(
            seq("<pos_0> -").0,
            vec![Token::special("<pos_0>"), Token::Minus]
        );
    }

    #[test]
    fn tokenize_number_edge_cases() {
        assert_eq!(seq("10").0, vec![Token::Number(10)]);
        // Leading zeros and zero itself do not round-trip as numbers.
        assert_eq!(seq("007").0, vec![Token::special("007")]);
        assert_eq!(seq("0").0, vec![Token::special("0")]);
        assert_eq!(
            seq("99999999999999999999999").0,
            vec![Token::special("99999999999999999999999")]
        );
    }

    #[test]
    fn render_round_trip_normalizes_whitespace() {
        let s = "  - 6 /  10 + 9 / 5 * 2  == 3 ";
        let toks = seq(s);
        assert_eq!(toks.render(), "- 6 / 10 + 9 / 5 * 2 == 3");
        assert_eq!(tokenize(&toks.render()), toks);
    }

    #[test]
    fn eval_precedence_and_unary_minus() {
        assert_eq!(eval_expr(&seq("- 6 / 10 + 9 / 5 * 2")).unwrap(), rational(3));
        assert_eq!(eval_expr(&seq("5")).unwrap(), rational(5));
        assert_eq!(eval_expr(&seq("( - 2 + 4 ) / 7 * 7")).unwrap(), rational(2));
        assert_eq!(eval_expr(&seq("2 * 2 - 4 + 8 / 2")).unwrap(), rational(4));
        assert_eq!(eval_expr(&seq("- 2 + 2 / 4 * 8 + 2")).unwrap(), rational(4));
    }

    #[test]
    fn eval_true_division() {
        let v = eval_expr(&seq("2 / 7 * 7")).unwrap();
        assert_eq!(v, rational(2));
        let half = eval_expr(&seq("1 / 2")).unwrap();
        assert_eq!(half, Rational::new(BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn eval_rejects_malformed() {
        for bad in [
            "+ + 3",
            "3 +",
            "( 3",
            "3 )",
            "3 3",
            "",
            "<done>",
            "3 * - 4",
            "3 == 3",
        ] {
            assert!(eval_expr(&seq(bad)).is_err(), "should reject {bad:?}");
        }
        assert_eq!(eval_expr(&seq("3 / ( 2 - 2 )")), Err(EvalError::DivisionByZero));
    }

    #[test]
    fn check_equation_examples() {
        assert!(check_equation(&seq("7 * 8 / 4 - 8 == 6")));
        assert!(!check_equation(&seq("2 == 3")));
        assert!(!check_equation(&seq("+ + 3 == 3")));
        assert!(!check_equation(&seq("3 == 3 == 3")));
        assert!(!check_equation(&seq("3 + 3")));
        assert!(!check_equation(&seq("")));
        // AES sources carry a bracketed right-hand side.
        assert!(check_equation(&seq("2 / 7 * ( 11 - 4 ) == ( 4 - 2 )")));
        assert!(!check_equation(&seq("1 / ( 3 - 3 ) == 1")));
    }

    /// Independent reference evaluator: split top-level sums, then fold each
    /// product left to right. Used as a brute-force oracle below.
    fn reference_eval(tokens: &[Token]) -> Option<Rational> {
        // Split into (sign, factor-chain) terms at top-level +/-.
        let mut terms: Vec<(i64, Vec<&Token>)> = Vec::new();
        let mut current: Vec<&Token> = Vec::new();
        let mut sign = 1i64;
        let mut expect_operand = true;
        let mut depth = 0usize;
        let mut first = true;
        for t in tokens {
            match t {
                Token::LParen => {
                    depth += 1;
                    current.push(t);
                    expect_operand = true;
                }
                Token::RParen => {
                    if depth == 0 {
                        return None;
                    }
                    depth -= 1;
                    current.push(t);
                    expect_operand = false;
                }
                Token::Plus | Token::Minus if depth == 0 && !expect_operand => {
                    terms.push((sign, std::mem::take(&mut current)));
                    sign = if *t == Token::Minus { -1 } else { 1 };
                    expect_operand = true;
                }
                Token::Minus if depth == 0 && expect_operand && first => {
                    sign = -1;
                }
                _ => {
                    current.push(t);
                    expect_operand = false;
                }
            }
            first = false;
        }
        if depth != 0 || current.is_empty() {
            return None;
        }
        terms.push((sign, current));

        let mut total = rational(0);
        for (sign, factors) in terms {
            let v = reference_product(&factors)?;
            total += rational(sign) * v;
        }
        Some(total)
    }

    fn reference_product(factors: &[&Token]) -> Option<Rational> {
        let mut value: Option<Rational> = None;
        let mut op: Option<Token> = None;
        let mut i = 0;
        while i < factors.len() {
            let atom = match factors[i] {
                Token::Number(n) => {
                    i += 1;
                    rational(*n as i64)
                }
                Token::LParen => {
                    let mut depth = 1;
                    let mut j = i + 1;
                    while j < factors.len() && depth > 0 {
                        match factors[j] {
                            Token::LParen => depth += 1,
                            Token::RParen => depth -= 1,
                            _ => {}
                        }
                        j += 1;
                    }
                    if depth != 0 {
                        return None;
                    }
                    let inner: Vec<Token> = factors[i + 1..j - 1].iter().map(|t| (*t).clone()).collect();
                    i = j;
                    reference_eval(&inner)?
                }
                _ => return None,
            };
            value = Some(match (value, op.take()) {
                (None, None) => atom,
                (Some(v), Some(Token::Times)) => v * atom,
                (Some(v), Some(Token::Divide)) => {
                    if atom.is_zero() {
                        return None;
                    }
                    v / atom
                }
                _ => return None,
            });
            if i < factors.len() {
                match factors[i] {
                    Token::Times | Token::Divide => {
                        op = Some(factors[i].clone());
                        i += 1;
                    }
                    _ => return None,
                }
            }
        }
        if op.is_some() {
            return None;
        }
        value
    }

    #[test]
    fn evaluator_matches_brute_force_reference() {
        // All three-operand expressions over {1..5}, optionally negated.
        let ops = [Token::Plus, Token::Minus, Token::Times, Token::Divide];
        let mut checked = 0usize;
        for neg in [false, true] {
            for a in 1..=5u64 {
                for b in 1..=5u64 {
                    for c in 1..=5u64 {
                        for op1 in &ops {
                            for op2 in &ops {
                                let mut toks = Vec::new();
                                if neg {
                                    toks.push(Token::Minus);
                                }
                                toks.extend([
                                    Token::Number(a),
                                    op1.clone(),
                                    Token::Number(b),
                                    op2.clone(),
                                    Token::Number(c),
                                ]);
                                let seq = TokenSeq(toks.clone());
                                let got = eval_expr(&seq).ok();
                                let want = reference_eval(&toks);
                                assert_eq!(got, want, "mismatch on {}", seq);
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(checked, 4000);
    }
}
