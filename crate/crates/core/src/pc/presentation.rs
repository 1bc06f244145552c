//! Power-conjugate presentations and their text encoding.
//!
//! Generators are indexed from 0 in the API and from 1 in corpus text
//! (`g1`, `g2`, ...). Conjugation follows `x^y = y⁻¹·x·y`.

use std::fmt::{self, Write as _};

use crate::error::{Error, ParseErrorKind, Result};

/// An element in normal form `g₁^a₁ ··· gₙ^aₙ`, `0 ≤ aᵢ < eᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord(pub(crate) Vec<u32>);

impl NormalWord {
    pub fn identity(n: usize) -> Self {
        NormalWord(vec![0; n])
    }

    /// Wraps an exponent vector. Ranges are not checked here; use
    /// [`PcPresentation::normal_word`] for a checked constructor.
    pub fn from_exponents(exps: Vec<u32>) -> Self {
        NormalWord(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// The letters `(generator, exponent)` of the word, left to right.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(gen, &a)| Letter::new(gen, a as i64))
    }

    /// Letters of the formal inverse word (reversed, negated exponents).
    pub fn inverse_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &a)| a != 0)
            .map(|(gen, &a)| Letter::new(gen, -(a as i64)))
    }

    /// Smallest generator index with a nonzero exponent.
    pub fn leading(&self) -> Option<usize> {
        self.0.iter().position(|&a| a != 0)
    }
}

/// A letter `g_gen^exp` of an arbitrary word. `exp` may be negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub exp: i64,
}

impl Letter {
    pub fn new(gen: usize, exp: i64) -> Self {
        Letter { gen, exp }
    }
}

/// A finite solvable group given by a consistent-or-not pc presentation.
///
/// `power_rhs[i]` is the value of `gᵢ^eᵢ`; `conj_rhs[j][i]` (for `i < j`) is
/// the value of `gⱼ^gᵢ`. Every right-hand side is a normal word in the
/// generators with index greater than `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    name: String,
    rel_orders: Vec<u32>,
    power_rhs: Vec<NormalWord>,
    conj_rhs: Vec<Vec<NormalWord>>,
    declared_order: Option<u64>,
}

impl PcPresentation {
    /// Starts a presentation with trivial relations: every power and
    /// conjugation right-hand side defaults to the identity resp. `gⱼ`.
    pub fn builder(name: impl Into<String>, rel_orders: Vec<u32>) -> PcBuilder {
        let n = rel_orders.len();
        let conj_rhs = (0..n)
            .map(|j| (0..j).map(|_| unit(n, j)).collect())
            .collect();
        PcBuilder {
            pres: PcPresentation {
                name: name.into(),
                power_rhs: vec![NormalWord::identity(n); n],
                conj_rhs,
                rel_orders,
                declared_order: None,
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of pc generators.
    pub fn len(&self) -> usize {
        self.rel_orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel_orders.is_empty()
    }

    pub fn rel_orders(&self) -> &[u32] {
        &self.rel_orders
    }

    pub fn rel_order(&self, i: usize) -> u32 {
        self.rel_orders[i]
    }

    pub fn power_rhs(&self, i: usize) -> &NormalWord {
        &self.power_rhs[i]
    }

    /// Value of `gⱼ^gᵢ` for `i < j`.
    pub fn conj_rhs(&self, j: usize, i: usize) -> &NormalWord {
        debug_assert!(i < j);
        &self.conj_rhs[j][i]
    }

    pub fn declared_order(&self) -> Option<u64> {
        self.declared_order
    }

    /// `∏ eᵢ`, the group order when the presentation is consistent.
    pub fn order(&self) -> u64 {
        self.rel_orders.iter().map(|&e| e as u64).product()
    }

    pub(crate) fn checked_order(&self) -> Option<u128> {
        self.rel_orders
            .iter()
            .try_fold(1u128, |acc, &e| acc.checked_mul(e as u128))
    }

    pub fn identity(&self) -> NormalWord {
        NormalWord::identity(self.len())
    }

    /// The generator `gᵢ` as a normal word.
    pub fn generator(&self, i: usize) -> NormalWord {
        unit(self.len(), i)
    }

    /// Checked constructor for normal words of this presentation.
    pub fn normal_word(&self, exps: Vec<u32>) -> Result<NormalWord> {
        if exps.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: exps.len(),
            });
        }
        if let Some((k, _)) = exps
            .iter()
            .enumerate()
            .find(|(k, &a)| a >= self.rel_orders[*k])
        {
            return Err(Error::Precondition(format!(
                "exponent of g{} out of range",
                k + 1
            )));
        }
        Ok(NormalWord(exps))
    }

    /// True when `gⱼ^gᵢ = gⱼ` is the stated relation.
    pub fn conj_is_trivial(&self, j: usize, i: usize) -> bool {
        let w = &self.conj_rhs[j][i].0;
        w.iter()
            .enumerate()
            .all(|(k, &a)| if k == j { a == 1 } else { a == 0 })
    }

    /// Replaces one conjugation right-hand side, keeping structural checks.
    pub fn with_conj(mut self, j: usize, i: usize, rhs: NormalWord) -> Result<Self> {
        if i >= j || j >= self.len() {
            return Err(Error::Precondition(format!("conj {} {} out of range", j + 1, i + 1)));
        }
        self.check_rhs(&rhs, i)?;
        self.conj_rhs[j][i] = rhs;
        Ok(self)
    }

    /// Replaces one power right-hand side, keeping structural checks.
    pub fn with_power(mut self, i: usize, rhs: NormalWord) -> Result<Self> {
        if i >= self.len() {
            return Err(Error::Precondition(format!("pow {} out of range", i + 1)));
        }
        self.check_rhs(&rhs, i)?;
        self.power_rhs[i] = rhs;
        Ok(self)
    }

    fn check_rhs(&self, rhs: &NormalWord, i: usize) -> Result<()> {
        if rhs.0.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: rhs.0.len(),
            });
        }
        if let Some(k) = rhs.0[..=i].iter().position(|&a| a != 0) {
            return Err(Error::Precondition(format!(
                "RHS index not > i: relation for g{} mentions g{}",
                i + 1,
                k + 1
            )));
        }
        if rhs.0.iter().zip(&self.rel_orders).any(|(&a, &e)| a >= e) {
            return Err(Error::Precondition("RHS not in normal form".into()));
        }
        Ok(())
    }

    /// Canonical corpus text for this presentation. Trivial relations are
    /// omitted; the output is byte-stable.
    pub fn to_corpus_text(&self) -> String {
        let mut out = String::new();
        match self.declared_order {
            Some(order) => writeln!(out, "group {} order={}", self.name, order),
            None => writeln!(out, "group {}", self.name),
        }
        .unwrap();
        writeln!(out, "gens {}", self.len()).unwrap();
        out.push_str("orders");
        for e in &self.rel_orders {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
        for (i, w) in self.power_rhs.iter().enumerate() {
            if !w.is_identity() {
                writeln!(out, "pow {} = {}", i + 1, WordDisplay(w)).unwrap();
            }
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if !self.conj_is_trivial(j, i) {
                    writeln!(out, "conj {} {} = {}", j + 1, i + 1, WordDisplay(&self.conj_rhs[j][i]))
                        .unwrap();
                }
            }
        }
        out
    }
}

fn unit(n: usize, j: usize) -> NormalWord {
    let mut v = vec![0; n];
    v[j] = 1;
    NormalWord(v)
}

/// Writes a normal word in corpus syntax (`1`, `g2*g3^2`).
pub struct WordDisplay<'a>(pub &'a NormalWord);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &a) in self.0 .0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if a == 1 {
                write!(f, "g{}", k + 1)?;
            } else {
                write!(f, "g{}^{}", k + 1, a)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Incremental construction with the same structural checks as the parser.
#[derive(Debug)]
pub struct PcBuilder {
    pres: PcPresentation,
}

impl PcBuilder {
    pub fn declared_order(mut self, order: u64) -> Self {
        self.pres.declared_order = Some(order);
        self
    }

    /// Sets `gᵢ^eᵢ` from exponents (0-based generator indices).
    pub fn power(mut self, i: usize, exps: Vec<u32>) -> Result<Self> {
        let w = NormalWord(exps);
        self.pres = self.pres.with_power(i, w)?;
        Ok(self)
    }

    /// Sets `gⱼ^gᵢ` from exponents (0-based generator indices).
    pub fn conj(mut self, j: usize, i: usize, exps: Vec<u32>) -> Result<Self> {
        let w = NormalWord(exps);
        self.pres = self.pres.with_conj(j, i, w)?;
        Ok(self)
    }

    pub fn build(self) -> Result<PcPresentation> {
        let p = self.pres;
        if let Some(i) = p.rel_orders.iter().position(|&e| e < 2) {
            return Err(Error::Precondition(format!(
                "relative order of g{} must be at least 2",
                i + 1
            )));
        }
        if let Some(declared) = p.declared_order {
            if p.checked_order() != Some(declared as u128) {
                return Err(Error::Precondition(format!(
                    "declared order {declared} does not match product of relative orders"
                )));
            }
        }
        Ok(p)
    }
}

/// Parsed word: `(generator, exponent)` terms.
type Terms = Vec<(usize, u64)>;

struct Stanza<'a> {
    source: &'a str,
    name: Option<String>,
    declared: Option<u64>,
    gens: Option<usize>,
    orders: Option<Vec<u32>>,
    pows: Vec<(usize, usize, Terms)>,
    conjs: Vec<(usize, usize, usize, Terms)>,
}

struct Cursor<'a> {
    source: &'a str,
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, kind: ParseErrorKind) -> Error {
        Error::Parse {
            source_name: self.source.to_string(),
            line: self.line,
            column: self.pos + 1,
            kind,
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> Error {
        self.err(ParseErrorKind::Syntax(msg.into()))
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with([' ', '\t']) {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn token(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || c == '=' || c == '*' || c == '^')
            .unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &rest[..len]))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{c}`")))
        }
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T> {
        self.skip_ws();
        let save = self.pos;
        match self.token() {
            Some((_, t)) if t.bytes().all(|b| b.is_ascii_digit()) => t.parse().map_err(|_| {
                self.pos = save;
                self.syntax(format!("{what} out of range"))
            }),
            _ => {
                self.pos = save;
                Err(self.syntax(format!("expected {what}")))
            }
        }
    }

    /// `1` | term (`*` term)*, term := `g<k>` | `g<k>^<m>`.
    fn word(&mut self) -> Result<Vec<(usize, u64)>> {
        self.skip_ws();
        if self.text[self.pos..].starts_with('1') {
            let save = self.pos;
            if let Some((_, "1")) = self.token() {
                return Ok(Vec::new());
            }
            self.pos = save;
        }
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            let col = self.pos;
            let gen = match self.token() {
                Some((_, t)) if t.starts_with('g') && t.len() > 1 && t[1..].bytes().all(|b| b.is_ascii_digit()) => {
                    t[1..].parse::<usize>().map_err(|_| self.syntax("generator index too large"))?
                }
                _ => {
                    self.pos = col;
                    return Err(self.syntax("expected generator `g<k>` or `1`"));
                }
            };
            let exp = if self.peek() == Some('^') {
                self.pos += 1;
                self.number::<u64>("exponent")?
            } else {
                1
            };
            terms.push((gen, exp));
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(terms)
    }
}

/// Parses every stanza in `text`. `source` names the input in diagnostics.
pub fn parse_corpus_text(source: &str, text: &str) -> Result<Vec<PcPresentation>> {
    if !text.is_ascii() {
        let (line, column) = text
            .lines()
            .enumerate()
            .find_map(|(l, s)| s.find(|c: char| !c.is_ascii()).map(|c| (l + 1, c + 1)))
            .unwrap_or((1, 1));
        return Err(Error::Parse {
            source_name: source.to_string(),
            line,
            column,
            kind: ParseErrorKind::Syntax("non-ASCII input".into()),
        });
    }
    let mut stanzas: Vec<(usize, Stanza)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim_end();
        let mut cur = Cursor {
            source,
            line: line_no,
            text,
            pos: 0,
        };
        if cur.at_end() {
            continue;
        }
        let (kw_col, kw) = cur.token().ok_or_else(|| cur.syntax("expected keyword"))?;
        if kw == "group" {
            let name = match cur.token() {
                Some((_, t)) if t.bytes().all(|b| b.is_ascii_alphanumeric() || b"_.-".contains(&b)) => t.to_string(),
                _ => return Err(cur.syntax("expected group name")),
            };
            let mut declared = None;
            if !cur.at_end() {
                match cur.token() {
                    Some((_, "order")) => {}
                    _ => return Err(cur.syntax("expected `order=<N>`")),
                }
                cur.expect('=')?;
                declared = Some(cur.number::<u64>("order")?);
            }
            if !cur.at_end() {
                return Err(cur.syntax("trailing input"));
            }
            stanzas.push((
                line_no,
                Stanza {
                    source,
                    name: Some(name),
                    declared,
                    gens: None,
                    orders: None,
                    pows: Vec::new(),
                    conjs: Vec::new(),
                },
            ));
            continue;
        }
        if stanzas.is_empty() {
            // A headerless stanza is allowed for single-group input.
            stanzas.push((
                line_no,
                Stanza {
                    source,
                    name: None,
                    declared: None,
                    gens: None,
                    orders: None,
                    pows: Vec::new(),
                    conjs: Vec::new(),
                },
            ));
        }
        let st = &mut stanzas.last_mut().unwrap().1;
        match kw {
            "gens" => {
                if st.gens.is_some() {
                    return Err(cur.err(ParseErrorKind::DuplicateRelation("gens".into())));
                }
                st.gens = Some(cur.number("generator count")?);
            }
            "orders" => {
                if st.orders.is_some() {
                    return Err(cur.err(ParseErrorKind::DuplicateRelation("orders".into())));
                }
                let mut v = Vec::new();
                while !cur.at_end() {
                    let col = cur.pos;
                    let e: u32 = cur.number("relative order")?;
                    if e < 2 {
                        cur.pos = col;
                        return Err(cur.err(ParseErrorKind::DegenerateGenerator(v.len() + 1)));
                    }
                    v.push(e);
                }
                st.orders = Some(v);
            }
            "pow" => {
                let i: usize = cur.number("generator index")?;
                cur.expect('=')?;
                let w = cur.word()?;
                if !cur.at_end() {
                    return Err(cur.syntax("trailing input"));
                }
                st.pows.push((line_no, i, w));
            }
            "conj" => {
                let j: usize = cur.number("generator index")?;
                let i: usize = cur.number("generator index")?;
                if j <= i {
                    return Err(cur.syntax("conj j i requires j > i"));
                }
                cur.expect('=')?;
                let w = cur.word()?;
                if !cur.at_end() {
                    return Err(cur.syntax("trailing input"));
                }
                st.conjs.push((line_no, j, i, w));
            }
            _ => {
                cur.pos = kw_col;
                return Err(cur.syntax(format!("unknown keyword `{kw}`")));
            }
        }
    }
    stanzas
        .into_iter()
        .map(|(line, st)| st.finish(line))
        .collect()
}

/// Parses exactly one presentation (the first stanza must be the only one).
pub fn parse_pc_presentation(text: &str) -> Result<PcPresentation> {
    let mut all = parse_corpus_text("<input>", text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(Error::Parse {
            source_name: "<input>".into(),
            line: 1,
            column: 1,
            kind: ParseErrorKind::Missing("gens"),
        }),
        _ => Err(Error::Precondition(format!(
            "expected one presentation, found {}",
            all.len()
        ))),
    }
}

/// Canonical text for `p`; inverse of [`parse_pc_presentation`].
pub fn serialize_pc_presentation(p: &PcPresentation) -> String {
    p.to_corpus_text()
}

impl Stanza<'_> {
    fn err(&self, line: usize, kind: ParseErrorKind) -> Error {
        Error::Parse {
            source_name: self.source.to_string(),
            line,
            column: 1,
            kind,
        }
    }

    fn finish(self, header_line: usize) -> Result<PcPresentation> {
        let n = self
            .gens
            .ok_or_else(|| self.err(header_line, ParseErrorKind::Missing("gens")))?;
        let orders = match &self.orders {
            Some(o) => o.clone(),
            None if n == 0 => Vec::new(),
            None => return Err(self.err(header_line, ParseErrorKind::Missing("orders"))),
        };
        if orders.len() != n {
            return Err(self.err(
                header_line,
                ParseErrorKind::Syntax(format!("`gens {n}` but {} relative orders", orders.len())),
            ));
        }
        let name = self.name.clone().unwrap_or_else(|| "unnamed".into());
        let mut pres = PcPresentation::builder(name, orders.clone()).pres;

        let to_word = |line: usize, rel: usize, terms: &[(usize, u64)]| -> Result<NormalWord> {
            let mut exps = vec![0u32; n];
            let mut last = 0usize;
            for &(k, a) in terms {
                if k == 0 || k > n {
                    return Err(self.err(line, ParseErrorKind::IndexOutOfRange { index: k, n }));
                }
                if k <= rel {
                    return Err(self.err(line, ParseErrorKind::RhsIndexNotGreater { rel, found: k }));
                }
                if k <= last {
                    return Err(self.err(
                        line,
                        ParseErrorKind::NotNormal("generator indices must strictly increase".into()),
                    ));
                }
                if a == 0 || a >= orders[k - 1] as u64 {
                    return Err(self.err(
                        line,
                        ParseErrorKind::NotNormal(format!(
                            "exponent {a} of g{k} outside 1..{}",
                            orders[k - 1]
                        )),
                    ));
                }
                exps[k - 1] = a as u32;
                last = k;
            }
            Ok(NormalWord(exps))
        };

        let mut seen_pow = vec![false; n];
        for (line, i, terms) in &self.pows {
            if *i == 0 || *i > n {
                return Err(self.err(*line, ParseErrorKind::IndexOutOfRange { index: *i, n }));
            }
            if std::mem::replace(&mut seen_pow[i - 1], true) {
                return Err(self.err(*line, ParseErrorKind::DuplicateRelation(format!("pow {i}"))));
            }
            pres.power_rhs[i - 1] = to_word(*line, *i, terms)?;
        }
        let mut seen_conj = std::collections::HashSet::new();
        for (line, j, i, terms) in &self.conjs {
            if *j > n {
                return Err(self.err(*line, ParseErrorKind::IndexOutOfRange { index: *j, n }));
            }
            if !seen_conj.insert((*j, *i)) {
                return Err(self.err(*line, ParseErrorKind::DuplicateRelation(format!("conj {j} {i}"))));
            }
            pres.conj_rhs[j - 1][i - 1] = to_word(*line, *i, terms)?;
        }
        if let Some(declared) = self.declared {
            let actual = pres.checked_order();
            if actual != Some(declared as u128) {
                return Err(self.err(
                    header_line,
                    ParseErrorKind::OrderMismatch {
                        declared,
                        actual: actual.map_or(u64::MAX, |a| a.min(u64::MAX as u128) as u64),
                    },
                ));
            }
            pres.declared_order = Some(declared);
        }
        Ok(pres)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const HEISENBERG: &str = "\
group heisenberg27 order=27
gens 3
orders 3 3 3
conj 2 1 = g2*g3
";

    #[test]
    fn parses_heisenberg() {
        let p = parse_pc_presentation(HEISENBERG).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.rel_orders(), &[3, 3, 3]);
        assert_eq!(p.conj_rhs(1, 0).exps(), &[0, 1, 1]);
        assert!(p.conj_is_trivial(2, 0));
        assert!(p.power_rhs(0).is_identity());
        assert_eq!(p.declared_order(), Some(27));
    }

    #[test]
    fn parses_cyclic_without_header() {
        let p = parse_pc_presentation("gens 1\norders 5\n").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.rel_order(0), 5);
        assert!(p.power_rhs(0).is_identity());
    }

    #[test]
    fn trivial_group_has_no_generators() {
        let p = parse_pc_presentation("group 1.1 order=1\ngens 0\norders\n").unwrap();
        assert!(p.is_empty());
        assert_eq!(p.order(), 1);
    }

    fn kind(text: &str) -> ParseErrorKind {
        match parse_pc_presentation(text).unwrap_err() {
            Error::Parse { kind, .. } => kind,
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn rejects_rhs_mentioning_low_generator() {
        let k = kind("gens 3\norders 3 3 3\nconj 2 1 = g1*g3\n");
        assert_eq!(k, ParseErrorKind::RhsIndexNotGreater { rel: 1, found: 1 });
        assert_eq!(
            k.to_string(),
            "RHS index not > i: relation for generator 1 mentions g1"
        );
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            kind("gens 2\norders 2 2\npow 3 = 1\n"),
            ParseErrorKind::IndexOutOfRange { index: 3, n: 2 }
        ));
        assert!(matches!(
            kind("gens 3\norders 2 2 2\npow 1 = g3*g2\n"),
            ParseErrorKind::NotNormal(_)
        ));
        assert!(matches!(
            kind("gens 2\norders 2 2\npow 1 = g2^2\n"),
            ParseErrorKind::NotNormal(_)
        ));
        assert!(matches!(
            kind("group x order=8\ngens 2\norders 2 2\n"),
            ParseErrorKind::OrderMismatch { declared: 8, actual: 4 }
        ));
        assert!(matches!(
            kind("gens 2\norders 2 1\n"),
            ParseErrorKind::DegenerateGenerator(2)
        ));
        assert!(matches!(kind("gens 2\norders 2 2\nfoo\n"), ParseErrorKind::Syntax(_)));
        assert!(matches!(
            kind("gens 2\norders 2 2\npow 1 = g2\npow 1 = 1\n"),
            ParseErrorKind::DuplicateRelation(_)
        ));
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_pc_presentation("gens 2\norders 2 2\npow 1 = h2\n").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert_eq!(column, 9);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn comments_and_multiple_stanzas() {
        let text = "# corpus\ngroup a order=2\ngens 1\norders 2 # cyclic\n\ngroup b\ngens 1\norders 3\n";
        let all = parse_corpus_text("mem", text).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1].name(), "b");
        assert_eq!(all[1].declared_order(), None);
    }

    #[test]
    fn serialization_is_canonical() {
        let p = parse_pc_presentation(HEISENBERG).unwrap();
        let text = p.to_corpus_text();
        assert_eq!(text, HEISENBERG);
        assert_eq!(parse_pc_presentation(&text).unwrap(), p);
        let c5 = parse_pc_presentation("group c5 order=5\ngens 1\norders 5\n").unwrap();
        assert_eq!(c5.to_corpus_text(), "group c5 order=5\ngens 1\norders 5\n");
    }

    #[test]
    fn builder_checks_rhs() {
        let b = PcPresentation::builder("x", vec![2, 2]);
        assert!(b.power(1, vec![1, 0]).is_err());
        let p = PcPresentation::builder("x", vec![2, 2])
            .power(0, vec![0, 1])
            .unwrap()
            .declared_order(4)
            .build()
            .unwrap();
        assert_eq!(p.power_rhs(0).exps(), &[0, 1]);
    }
}
