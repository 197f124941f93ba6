//! `j(-2)c(-1)^2 e[-j+(λ+3)c]`.

use bpvoa_exact::RatFunc;

use super::{ExpGround, LatticeKey, LatticeState};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::voa::table::{coeff_prefix, split_terms, split_top_level};
use crate::weight::HalfInt;

fn render_modes(out: &mut String, name: char, p: &Partition) {
    for (part, mult) in p.grouped() {
        out.push_str(&format!("{name}(-{part})"));
        if mult > 1 {
            out.push_str(&format!("^{mult}"));
        }
    }
}

fn scalar_times(coeff: &str, symbol: char) -> String {
    match coeff {
        "1" => symbol.to_string(),
        "-1" => format!("-{symbol}"),
        c if c.parse::<i64>().is_ok() => format!("{c}{symbol}"),
        c => format!("({c}){symbol}"),
    }
}

pub fn render_exp(g: &ExpGround) -> String {
    let mut parts = Vec::new();
    if g.r != HalfInt::ZERO {
        parts.push(scalar_times(&g.r.to_string(), 'j'));
    }
    if !g.mu.is_zero() {
        parts.push(scalar_times(&g.mu.to_string(), 'c'));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = parts[0].clone();
    if let Some(second) = parts.get(1) {
        if !second.starts_with('-') {
            s.push('+');
        }
        s.push_str(second);
    }
    s
}

pub fn render_key(k: &LatticeKey) -> String {
    let mut s = String::new();
    render_modes(&mut s, 'j', &k.j);
    render_modes(&mut s, 'c', &k.c);
    if !s.is_empty() {
        s.push(' ');
    }
    s.push_str(&format!("e[{}]", render_exp(&k.exp)));
    s
}

pub fn render_state(v: &LatticeState) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(k, c)| format!("{}{}", coeff_prefix(c), render_key(k)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn bad(s: &str) -> Error {
    Error::State(format!("malformed lattice state `{s}`"))
}

/// Parses `"" | "-" | "3" | "(expr)"` as the coefficient of a symbol.
fn parse_scalar(s: &str) -> Result<RatFunc> {
    match s {
        "" | "+" => Ok(RatFunc::one()),
        "-" => Ok(-RatFunc::one()),
        _ => {
            let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
            Ok(inner.parse()?)
        }
    }
}

pub fn parse_exp(s: &str) -> Result<ExpGround> {
    let s = s.trim();
    if s == "0" {
        return Ok(ExpGround::zero());
    }
    let mut depth = 0;
    let mut jpos = None;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            'j' if depth == 0 => jpos = Some(i),
            _ => {}
        }
    }
    let (r, rest) = match jpos {
        Some(i) => {
            let rc = parse_scalar(&s[..i])?;
            let r = rc
                .to_rational()
                .ok_or_else(|| bad(s))?
                .to_string()
                .parse::<HalfInt>()?;
            (r, &s[i + 1..])
        }
        None => (HalfInt::ZERO, s),
    };
    let mu = if rest.is_empty() {
        RatFunc::zero()
    } else {
        let body = rest.strip_suffix('c').ok_or_else(|| bad(s))?;
        let body = body.strip_prefix('+').unwrap_or(body);
        if body.starts_with('(') || body.is_empty() || body == "-" {
            parse_scalar(body)?
        } else {
            body.parse::<i64>().map(RatFunc::from_int).map_err(|_| bad(s))?
        }
    };
    Ok(ExpGround::new(r, mu))
}

pub fn parse_key(s: &str) -> Result<LatticeKey> {
    let s = s.trim();
    let e = s.find("e[").ok_or_else(|| bad(s))?;
    let exp_text = s[e + 2..].strip_suffix(']').ok_or_else(|| bad(s))?;
    let exp = parse_exp(exp_text)?;
    let mut j = Vec::new();
    let mut c = Vec::new();
    let mut rest = s[..e].trim();
    while !rest.is_empty() {
        let name = rest.chars().next().ok_or_else(|| bad(s))?;
        let close = rest.find(')').ok_or_else(|| bad(s))?;
        let part: i64 = rest[1..close]
            .trim_start_matches('(')
            .parse()
            .map_err(|_| bad(s))?;
        if part >= 0 {
            return Err(bad(s));
        }
        rest = &rest[close + 1..];
        let mut mult = 1;
        if let Some(r) = rest.strip_prefix('^') {
            let end = r.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(r.len());
            mult = r[..end].parse().map_err(|_| bad(s))?;
            rest = &r[end..];
        }
        let target = match name {
            'j' => &mut j,
            'c' => &mut c,
            _ => return Err(bad(s)),
        };
        target.extend(std::iter::repeat_n((-part) as u32, mult));
        rest = rest.trim_start();
    }
    Ok(LatticeKey::new(Partition::new(j), Partition::new(c), exp))
}

pub fn parse_state(text: &str) -> Result<LatticeState> {
    let text = text.trim();
    let mut out = LatticeState::zero();
    if text == "0" {
        return Ok(out);
    }
    for (neg, term) in split_terms(text) {
        let (coeff, key) = match split_top_level(term, " * ") {
            Some((c, k)) => (c.trim().parse::<RatFunc>()?, k),
            None => (RatFunc::one(), term),
        };
        out.add_term(parse_key(key)?, if neg { -coeff } else { coeff });
    }
    Ok(out)
}
