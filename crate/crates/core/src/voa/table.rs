//! OPE tables and their text format.
//!
//! ```text
//! algebra bp
//! central_charge (-8*k^2-20*k-12)/(k+3)
//! generator J 1
//! J(1)J = ((2*k+3)/3) * |0>
//! G+(0)G- = (2*k+3) * J(-2) |0> + 3 * J(-1) J(-1) |0> + (-k-3) * L(-1) |0>
//! ```
//!
//! States are sums of terms `coeff * Gen(index) ... ground` joined by ` + `,
//! with indices in the Borcherds convention. The coefficient is omitted when
//! it is 1 and parenthesised when it is not a single product. Grounds are
//! `|0>`, `|hw e1 e2 ...>` (zero-mode eigenvalues in generator order) and
//! `|top e1 e2 ...>` for the one-dimensional quotient.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use bpvoa_exact::{Rational, RatFunc, Var};

use crate::error::{Error, Result};
use crate::voa::types::{Generator, Ground, HwGround, Mode, PbwMonomial, State};
use crate::weight::HalfInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpeTable {
    name: String,
    central_charge: Option<RatFunc>,
    generators: Vec<Generator>,
    entries: BTreeMap<(usize, usize), BTreeMap<i64, State>>,
}

impl OpeTable {
    pub fn new(name: &str, central_charge: Option<RatFunc>) -> Self {
        OpeTable {
            name: name.to_string(),
            central_charge,
            generators: Vec::new(),
            entries: BTreeMap::new(),
        }
    }

    pub fn add_generator(&mut self, name: &str, weight: HalfInt) -> usize {
        let rank = self.generators.len();
        self.generators.push(Generator {
            name: name.to_string(),
            weight,
            pbw_rank: rank,
        });
        rank
    }

    /// Records `a_(j) b`. Declaring any `j` declares the ordered pair; other
    /// indices of a declared pair are zero.
    pub fn set_entry(&mut self, a: usize, b: usize, j: i64, state: State) {
        self.entries.entry((a, b)).or_default().insert(j, state);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `None` for algebras without a conformal vector.
    pub fn central_charge(&self) -> Option<&RatFunc> {
        self.central_charge.as_ref()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn weight(&self, gen: usize) -> HalfInt {
        self.generators[gen].weight
    }

    pub fn declared(&self, a: usize, b: usize) -> Option<&BTreeMap<i64, State>> {
        self.entries.get(&(a, b))
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), BTreeMap<i64, State>> {
        &self.entries
    }

    /// Every ordered pair must be declared in at least one order, and every
    /// entry must be homogeneous of weight `Δ_a + Δ_b - j - 1`.
    pub fn validate(&self) -> Result<()> {
        let n = self.generators.len();
        for a in 0..n {
            for b in 0..n {
                if self.declared(a, b).is_none() && self.declared(b, a).is_none() {
                    return Err(Error::MissingEntry(
                        self.generators[a].name.clone(),
                        self.generators[b].name.clone(),
                    ));
                }
            }
        }
        for (&(a, b), js) in &self.entries {
            for (&j, state) in js {
                let expected = self.weight(a) + self.weight(b) - HalfInt::from_int(j + 1);
                for mono in state.keys() {
                    if self.vacuum_weight(mono) != expected || !mono.is_ordered() {
                        return Err(Error::Invalid(format!(
                            "entry {}({j}){} is not a homogeneous PBW state of weight {expected}",
                            self.generators[a].name, self.generators[b].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Conformal weight of a vacuum-module monomial.
    pub fn vacuum_weight(&self, mono: &PbwMonomial) -> HalfInt {
        mono.0.iter().fold(HalfInt::ZERO, |acc, m| {
            acc + self.weight(m.gen) - HalfInt::from_int(m.index + 1)
        })
    }

    pub fn specialize(&self, bindings: &[(Var, Rational)]) -> Result<OpeTable> {
        let mut out = OpeTable {
            name: self.name.clone(),
            central_charge: self
                .central_charge
                .as_ref()
                .map(|c| c.specialize(bindings))
                .transpose()?,
            generators: self.generators.clone(),
            entries: BTreeMap::new(),
        };
        for (&pair, js) in &self.entries {
            let mut m = BTreeMap::new();
            for (&j, s) in js {
                m.insert(j, s.specialize(bindings)?);
            }
            out.entries.insert(pair, m);
        }
        Ok(out)
    }

    pub fn render_mode(&self, m: &Mode) -> String {
        format!("{}({})", self.generators[m.gen].name, m.index)
    }

    pub fn render_ground(&self, ground: &Ground) -> String {
        match ground {
            Ground::Vacuum => "|0>".to_string(),
            Ground::HighestWeight(hw) => {
                let tag = if hw.top_only { "top" } else { "hw" };
                let vals: Vec<String> = hw.eigenvalues.iter().map(|e| e.to_string()).collect();
                format!("|{tag} {}>", vals.join(" "))
            }
        }
    }

    pub fn render_state(&self, state: &State, ground: &Ground) -> String {
        if state.is_zero() {
            return "0".to_string();
        }
        let g = self.render_ground(ground);
        let terms: Vec<String> = state
            .iter()
            .map(|(mono, c)| {
                let mut s = String::new();
                s.push_str(&coeff_prefix(c));
                for m in mono.modes() {
                    s.push_str(&self.render_mode(m));
                    s.push(' ');
                }
                s.push_str(&g);
                s
            })
            .collect();
        terms.join(" + ")
    }

    fn parse_mode(&self, tok: &str) -> Result<Mode> {
        let bad = || Error::State(format!("malformed mode `{tok}`"));
        let open = tok.find('(').ok_or_else(bad)?;
        if !tok.ends_with(')') {
            return Err(bad());
        }
        let gen = self.generator_index(&tok[..open])?;
        let index: i64 = tok[open + 1..tok.len() - 1].parse().map_err(|_| bad())?;
        Ok(Mode::new(gen, index))
    }

    pub fn parse_ground(&self, s: &str) -> Result<Ground> {
        let inner = s
            .trim()
            .strip_prefix('|')
            .and_then(|t| t.strip_suffix('>'))
            .ok_or_else(|| Error::State(format!("malformed ground `{s}`")))?;
        if inner == "0" {
            return Ok(Ground::Vacuum);
        }
        let mut toks = inner.split_whitespace();
        let top_only = match toks.next() {
            Some("hw") => false,
            Some("top") => true,
            _ => return Err(Error::State(format!("malformed ground `{s}`"))),
        };
        let eigenvalues = toks
            .map(|t| t.parse::<RatFunc>().map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        if eigenvalues.len() != self.generators.len() {
            return Err(Error::State(format!(
                "ground `{s}` needs {} eigenvalues",
                self.generators.len()
            )));
        }
        Ok(Ground::HighestWeight(HwGround {
            eigenvalues,
            top_only,
        }))
    }

    /// Parses a rendered state. Monomials must already be in PBW order.
    pub fn parse_state(&self, text: &str) -> Result<(State, Ground)> {
        let text = text.trim();
        if text == "0" {
            return Ok((State::zero(), Ground::Vacuum));
        }
        let mut state = State::zero();
        let mut ground: Option<Ground> = None;
        for (sign, term) in split_terms(text) {
            let (coeff, rest) = match split_top_level(term, " * ") {
                Some((c, r)) => (c.trim().parse::<RatFunc>()?, r),
                None => (RatFunc::one(), term),
            };
            let bar = rest
                .find('|')
                .ok_or_else(|| Error::State(format!("term `{term}` has no ground")))?;
            let g = self.parse_ground(&rest[bar..])?;
            let modes = rest[..bar]
                .split_whitespace()
                .map(|t| self.parse_mode(t))
                .collect::<Result<Vec<_>>>()?;
            let mono = PbwMonomial(modes);
            if !mono.is_ordered() {
                return Err(Error::State(format!("term `{term}` is not in PBW order")));
            }
            match &ground {
                None => ground = Some(g),
                Some(prev) if *prev != g => {
                    return Err(Error::State("terms on different grounds".to_string()))
                }
                _ => {}
            }
            state.add_term(mono, if sign { -coeff } else { coeff });
        }
        Ok((state, ground.unwrap_or(Ground::Vacuum)))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "algebra {}", self.name).unwrap();
        if let Some(c) = &self.central_charge {
            writeln!(out, "central_charge {c}").unwrap();
        }
        for g in &self.generators {
            writeln!(out, "generator {} {}", g.name, g.weight).unwrap();
        }
        for (&(a, b), js) in &self.entries {
            for (&j, s) in js.iter().rev() {
                writeln!(
                    out,
                    "{}({j}){} = {}",
                    self.generators[a].name,
                    self.generators[b].name,
                    self.render_state(s, &Ground::Vacuum)
                )
                .unwrap();
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<OpeTable> {
        let mut table = OpeTable::new("", None);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: String| Error::Table { line: i + 1, msg };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("algebra ") {
                table.name = rest.trim().to_string();
            } else if let Some(rest) = line.strip_prefix("central_charge ") {
                table.central_charge = Some(rest.parse().map_err(|e| err(format!("{e}")))?);
            } else if let Some(rest) = line.strip_prefix("generator ") {
                let mut it = rest.split_whitespace();
                let (name, w) = match (it.next(), it.next(), it.next()) {
                    (Some(n), Some(w), None) => (n, w),
                    _ => return Err(err("expected `generator NAME WEIGHT`".into())),
                };
                let w: HalfInt = w.parse().map_err(|e| err(format!("{e}")))?;
                if w <= HalfInt::ZERO {
                    return Err(err("generator weights must be positive".into()));
                }
                table.add_generator(name, w);
            } else {
                let (lhs, rhs) = line
                    .split_once(" = ")
                    .ok_or_else(|| err(format!("unrecognised line `{line}`")))?;
                let open = lhs.find('(').ok_or_else(|| err("expected A(j)B".into()))?;
                let close = lhs.find(')').ok_or_else(|| err("expected A(j)B".into()))?;
                let a = table
                    .generator_index(&lhs[..open])
                    .map_err(|e| err(format!("{e}")))?;
                let b = table
                    .generator_index(&lhs[close + 1..])
                    .map_err(|e| err(format!("{e}")))?;
                let j: i64 = lhs[open + 1..close]
                    .parse()
                    .map_err(|_| err("bad product index".into()))?;
                if j < 0 {
                    return Err(err("product indices must be nonnegative".into()));
                }
                let (state, ground) = table.parse_state(rhs).map_err(|e| err(format!("{e}")))?;
                if ground != Ground::Vacuum {
                    return Err(err("table entries live in the vacuum module".into()));
                }
                table.set_entry(a, b, j, state);
            }
        }
        Ok(table)
    }
}

/// Splits at top-level ` + ` / ` - `; the flag marks negated terms.
pub(crate) fn split_terms(text: &str) -> Vec<(bool, &str)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut angle = false;
    let mut start = 0;
    let mut neg = false;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'|' => angle = true,
            b'>' => angle = false,
            b' ' if depth == 0
                && !angle
                && i + 2 < bytes.len()
                && (bytes[i + 1] == b'+' || bytes[i + 1] == b'-')
                && bytes[i + 2] == b' ' =>
            {
                out.push((neg, text[start..i].trim()));
                neg = bytes[i + 1] == b'-';
                start = i + 3;
                i += 3;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    out.push((neg, text[start..].trim()));
    out
}

pub(crate) fn split_top_level<'a>(text: &'a str, sep: &str) -> Option<(&'a str, &'a str)> {
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if depth == 0 && text[i..].starts_with(sep) => {
                return Some((&text[..i], &text[i + sep.len()..]))
            }
            _ => {}
        }
    }
    None
}

/// `"c * "` for a coefficient, parenthesised unless it is a bare number or
/// symbol; empty for 1.
pub(crate) fn coeff_prefix(c: &RatFunc) -> String {
    if c.is_one() {
        return String::new();
    }
    let cs = c.to_string();
    let bare = !cs.chars().skip(1).any(|ch| ch == '+' || ch == '-') && !cs.contains('/');
    if bare {
        format!("{cs} * ")
    } else {
        format!("({cs}) * ")
    }
}
