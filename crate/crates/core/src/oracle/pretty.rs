//! Human-readable rendering, e.g. `(3x²−1)/4 · ln((1+x)/(1−x)) − 3x/2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::exactnum::{denominator_lcm, Rational};
use crate::poly::Poly;

use super::{EndRat, LogRat};

const MINUS: char = '−';

fn superscript(n: u32) -> String {
    if n == 1 {
        return String::new();
    }
    n.to_string()
        .chars()
        .map(|c| match c {
            '0' => '⁰',
            '1' => '¹',
            '2' => '²',
            '3' => '³',
            '4' => '⁴',
            '5' => '⁵',
            '6' => '⁶',
            '7' => '⁷',
            '8' => '⁸',
            _ => '⁹',
        })
        .collect()
}

fn power_of_x(e: usize) -> String {
    match e {
        0 => String::new(),
        e => format!("x{}", superscript(e as u32)),
    }
}

/// Single signed term: `(negative, body)`.
type Term = (bool, String);

/// `c·x^e` as `3x/2`, `x/2`, `2/3`, ...
fn monomial(c: &Rational, e: usize) -> Term {
    let neg = c.is_negative();
    let p = c.numer().abs();
    let q = c.denom();
    let mut body = String::new();
    if e == 0 || !p.is_one() {
        body.push_str(&p.to_string());
    }
    body.push_str(&power_of_x(e));
    if !q.is_one() {
        body.push('/');
        body.push_str(&q.to_string());
    }
    (neg, body)
}

fn nonzero_terms(p: &Poly) -> Vec<(usize, &Rational)> {
    p.coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Integer-coefficient polynomial `3x²−1`, descending, no inner spaces.
fn integer_poly(terms: &[(usize, BigInt)]) -> String {
    let mut s = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        if c.is_negative() {
            s.push(MINUS);
        } else if i > 0 {
            s.push('+');
        }
        let a = c.abs();
        if *e == 0 || !a.is_one() {
            s.push_str(&a.to_string());
        }
        s.push_str(&power_of_x(*e));
    }
    s
}

/// Whole polynomial as one factor: `x/2`, `(3x²−1)/4`, `(x+1)`.
fn combined(p: &Poly) -> Term {
    let terms = nonzero_terms(p);
    if terms.len() == 1 {
        let (e, c) = terms[0];
        return monomial(c, e);
    }
    let d = denominator_lcm(p.coeffs());
    let mut ints: Vec<(usize, BigInt)> = terms
        .iter()
        .map(|(e, c)| (*e, c.numer() * (&d / c.denom())))
        .collect();
    let neg = ints[0].1.is_negative();
    if neg {
        for t in &mut ints {
            t.1 = -&t.1;
        }
    }
    let mut body = format!("({})", integer_poly(&ints));
    if !d.is_one() {
        body.push('/');
        body.push_str(&d.to_string());
    }
    (neg, body)
}

fn denominator(e: &EndRat) -> String {
    let mut factors = Vec::new();
    if e.pow_one_minus() > 0 {
        factors.push(format!("(1{MINUS}x){}", superscript(e.pow_one_minus())));
    }
    if e.pow_one_plus() > 0 {
        factors.push(format!("(1+x){}", superscript(e.pow_one_plus())));
    }
    if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        format!("({})", factors.concat())
    }
}

/// Slot coefficient as a single factor (used in front of a log).
fn factor(e: &EndRat) -> Term {
    let (neg, mut body) = combined(e.numerator());
    if !e.is_polynomial() {
        if body.contains('/') {
            body = format!("({body})");
        }
        body = format!("{body}/{}", denominator(e));
    }
    (neg, body)
}

fn plain_terms(e: &EndRat) -> Vec<Term> {
    if e.is_polynomial() {
        nonzero_terms(e.numerator())
            .into_iter()
            .map(|(k, c)| monomial(c, k))
            .collect()
    } else {
        vec![factor(e)]
    }
}

fn log_term(e: &EndRat, p: usize) -> Term {
    // Λ^p = 2^{-p} ln^p((1+x)/(1−x))
    let scaled = e.scale(&Rational::new(1, 1u64 << p));
    let log = format!("ln{}((1+x)/(1{MINUS}x))", superscript(p as u32));
    let (neg, body) = factor(&scaled);
    if body == "1" {
        (neg, log)
    } else {
        (neg, format!("{body} · {log}"))
    }
}

pub(super) fn render(f: &LogRat) -> String {
    let mut terms: Vec<Term> = Vec::new();
    for p in (1..f.slots().len()).rev() {
        let c = &f.slots()[p];
        if !c.is_zero() {
            terms.push(log_term(c, p));
        }
    }
    if !f.plain().is_zero() {
        terms.extend(plain_terms(&f.plain()));
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push(MINUS),
            (0, false) => {}
            (_, true) => {
                s.push(' ');
                s.push(MINUS);
                s.push(' ');
            }
            (_, false) => s.push_str(" + "),
        }
        s.push_str(body);
    }
    s
}

impl fmt::Display for LogRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl fmt::Display for EndRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&LogRat::from_slots(vec![self.clone()])))
    }
}
