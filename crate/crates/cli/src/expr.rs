//! The `eval` grammar: a prefix operation name followed by whitespace-separated operands.
//!
//! ```text
//! phi   <h=[..]@r=(..)> <step-elem>...
//! star  <bhs> <bhs>
//! dot   <bhs> <bhs>
//! gamma <id | h=[..] | Xn> <composition> <free-elem>...
//! beta  <invariant> <composition> <free-elem>...
//! ```
//!
//! Linear combinations are written without spaces, e.g. `2*x+y` or `[0,2]+3*[1,1]`.

use std::collections::BTreeMap;

use opdp::error::{Error, Result};
use opdp::freegamma::{parse_gen, FreeElem, Gamma, GammaTerm, Invariant};
use opdp::levelstep::{level_dot, level_star, Bhs, BhsAlgebra, StepAlgebra, StepElem, StepFunction};
use opdp::permcomb::Composition;
use opdp::scalar::{parse_rational, FieldSpec, Scalar};
use opdp::setoperad::{Op, Operad};

/// Splits on `+` outside brackets.
fn summands(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `c*body` or `body`.
fn coefficient(s: &str, field: FieldSpec) -> Result<(Scalar, &str)> {
    match s.split_once('*') {
        Some((c, body)) => {
            let q = parse_rational(c).ok_or_else(|| Error::Parse(format!("bad coefficient `{c}`")))?;
            Ok((field.reduce(&q)?, body))
        }
        None => Ok((field.one(), s)),
    }
}

pub fn parse_free(s: &str, operad: Operad, field: FieldSpec) -> Result<FreeElem> {
    let mut out = FreeElem::zero(operad, field);
    for part in summands(s) {
        let (c, body) = coefficient(part.trim(), field)?;
        let t = if body.contains('@') {
            body.parse::<GammaTerm>()?
        } else {
            GammaTerm::generator(operad, parse_gen(body)?)
        };
        if t.operad() != operad {
            return Err(Error::InvalidElement(format!("{body} is not in {operad}")));
        }
        out.add_term(t, &c);
    }
    Ok(out)
}

pub fn parse_step(s: &str, field: FieldSpec) -> Result<StepElem> {
    let mut out = StepElem::zero(field);
    for part in summands(s) {
        let (c, body) = coefficient(part.trim(), field)?;
        out.add_term(body.parse()?, &c);
    }
    Ok(out)
}

fn parse_op(s: &str, operad: Operad) -> Result<Op> {
    if s == "id" {
        Ok(operad.unit())
    } else {
        s.parse()
    }
}

fn parse_invariant(s: &str, operad: Operad, field: FieldSpec) -> Result<Invariant> {
    let mut out: Invariant = BTreeMap::new();
    for part in summands(s) {
        let (c, body) = coefficient(part.trim(), field)?;
        let slot = out.entry(parse_op(body, operad)?).or_insert_with(|| field.zero());
        *slot += &c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Renders a free element, writing generators by name.
pub fn render_free(e: &FreeElem) -> String {
    if e.is_zero() {
        return "0".into();
    }
    e.terms()
        .iter()
        .map(|(t, c)| {
            let body = if t.arity() == 1 {
                opdp::freegamma::gen_name(t.gens()[0])
            } else {
                t.to_string()
            };
            if c.is_one() {
                body
            } else {
                format!("{c}·{body}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn need<'a>(tokens: &[&'a str], k: usize, usage: &str) -> Result<&'a str> {
    tokens
        .get(k)
        .copied()
        .ok_or_else(|| Error::Parse(format!("usage: {usage}")))
}

pub fn eval(expr: &str, field: FieldSpec, operad: Operad) -> Result<String> {
    let tokens: Vec<&str> = expr.split_whitespace().collect();
    let Some((&op, rest)) = tokens.split_first() else {
        return Err(Error::Parse("empty expression".into()));
    };
    match op {
        "phi" => {
            let h: StepFunction = need(rest, 0, "phi <h=[..]@r=(..)> <args>...")?.parse()?;
            let args = rest[1..].iter().map(|a| parse_step(a, field)).collect::<Result<Vec<_>>>()?;
            Ok(BhsAlgebra { field }.phi(&h, &args)?.to_string())
        }
        "star" | "dot" => {
            let usage = "star|dot <bhs> <bhs>";
            let u: Bhs = need(rest, 0, usage)?.parse()?;
            let v: Bhs = need(rest, 1, usage)?.parse()?;
            if rest.len() > 2 {
                return Err(Error::Parse(format!("usage: {usage}")));
            }
            Ok(if op == "star" {
                level_star(&u, &v, field).to_string()
            } else {
                level_dot(&u, &v).to_string()
            })
        }
        "gamma" | "beta" => {
            let usage = "gamma|beta <operation> <composition> <args>...";
            let head = need(rest, 0, usage)?;
            let r: Composition = need(rest, 1, usage)?.parse()?;
            let operad = if head.contains('X') {
                Operad::Com
            } else if head.contains('[') {
                Operad::Lev
            } else {
                operad
            };
            let gamma = Gamma::new(operad, field);
            let args = rest[2..]
                .iter()
                .map(|a| parse_free(a, operad, field))
                .collect::<Result<Vec<_>>>()?;
            let out = if op == "gamma" {
                gamma.gamma_eval(&parse_op(head, operad)?, &r, &args)?
            } else {
                gamma.beta_eval(&parse_invariant(head, operad, field)?, &r, &args)?
            };
            Ok(render_free(&out))
        }
        other => Err(Error::Parse(format!("unknown operation `{other}`; expected phi, star, dot, gamma or beta"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn examples() {
        assert_eq!(eval("phi h=[1,1]@r=(2) [0,2]", Q, Operad::Lev).unwrap(), "3·[0,0,4]");
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(eval("star [0,2] [0,2]", f2, Operad::Lev).unwrap(), "0");
        assert_eq!(eval("gamma id (1) x", Q, Operad::Lev).unwrap(), "x");
        assert_eq!(eval("gamma X2 (2) x", Q, Operad::Lev).unwrap(), "X2@(2)(x)");
        assert_eq!(eval("gamma X2 (1,1) X2@(2)(x) X3@(3)(x)", Q, Operad::Com).unwrap(), "10·X5@(5)(x)");
        assert_eq!(eval("beta h=[1,2,2]+h=[2,1,2]+h=[2,2,1] (3) x", Q, Operad::Lev).unwrap(), "h=[1,2,2]@(3)(x)");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(eval("", Q, Operad::Lev), Err(Error::Parse(_))));
        assert!(matches!(eval("frob x", Q, Operad::Lev), Err(Error::Parse(_))));
        assert!(matches!(eval("star [0,2]", Q, Operad::Lev), Err(Error::Parse(_))));
        assert!(eval("gamma X2 (1) x", Q, Operad::Lev).is_err());
    }

    #[test]
    fn sums() {
        let e = parse_free("2*x+y", Operad::Com, Q).unwrap();
        assert_eq!(render_free(&e), "2·x + y");
        let s = parse_step("[0,2]+1/2*[1]", Q).unwrap();
        assert_eq!(s.terms().len(), 2);
    }
}
