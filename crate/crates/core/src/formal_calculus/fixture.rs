use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{
    b_cochain, big_b_cochain, coefficient_map, content, normalize, patterns_with_content, DerivWord, FormalCochain, FormalError,
    Pattern,
};
use crate::algebra_kernel::{int, QMatrix, Rational};

/// The printed ψ and bψ, one pattern per line.
pub const APPENDIX_FIXTURE: &str = include_str!("../../data/appendix.fixture");

/// Named sections of patterns, e.g. `[psi]` and `[bpsi]`.
#[derive(Clone, Debug, Default)]
pub struct Fixture {
    sections: BTreeMap<String, FormalCochain>,
}

impl Fixture {
    pub fn section(&self, name: &str) -> Option<&FormalCochain> {
        self.sections.get(name)
    }

    pub fn section_names(&self) -> impl Iterator<Item = &str> {
        self.sections.keys().map(|s| s.as_str())
    }
}

fn parse_error(line: usize, msg: impl Into<String>) -> FormalError {
    FormalError::Parse { line, msg: msg.into() }
}

/// Parse `coeff ; word₀ | word₁ | …` lines grouped under `[section]` headers; `#` starts a comment.
pub fn parse_fixture(text: &str) -> Result<Fixture, FormalError> {
    let mut sections: BTreeMap<String, FormalCochain> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| parse_error(line_no, "unterminated section header"))?.trim();
            if name.is_empty() {
                return Err(parse_error(line_no, "empty section name"));
            }
            current = Some(name.to_string());
            continue;
        }
        let name = current.clone().ok_or_else(|| parse_error(line_no, "pattern outside of a section"))?;
        let (coeff, words) = line.split_once(';').ok_or_else(|| parse_error(line_no, "expected `coeff ; words`"))?;
        let coeff: Rational =
            coeff.trim().parse().map_err(|_| parse_error(line_no, format!("bad coefficient `{}`", coeff.trim())))?;
        let words = words
            .split('|')
            .map(|w| DerivWord::parse(w).map_err(|e| parse_error(line_no, e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let pattern = Pattern(words);
        let arity = pattern.arity();
        let entry = sections.entry(name).or_insert_with(|| FormalCochain::zero(arity));
        entry.add_term(pattern, coeff).map_err(|e| parse_error(line_no, e.to_string()))?;
    }
    Ok(Fixture { sections })
}

/// Serialize cochains in the fixture format, one section each.
pub fn write_fixture(sections: &[(&str, &FormalCochain)]) -> String {
    let mut out = String::new();
    for (name, c) in sections {
        out.push_str(&format!("[{name}]\n"));
        for (p, k) in c.terms() {
            let words: Vec<String> = p.0.iter().map(|w| w.to_string()).collect();
            out.push_str(&format!("{k} ; {}\n", words.join(" | ")));
        }
    }
    out
}

/// A pattern whose computed and printed coefficients differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternDiff {
    pub pattern: Pattern,
    pub computed: Rational,
    pub printed: Rational,
}

impl fmt::Display for PatternDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  [{}]: computed {}, printed {}", self.pattern.paper_notation(), self.pattern, self.computed, self.printed)
    }
}

#[derive(Clone, Debug)]
pub struct AppendixReport {
    pub b_psi: FormalCochain,
    pub b_diffs: Vec<PatternDiff>,
    pub big_b_psi: FormalCochain,
    /// `b(printed bψ) = 0`.
    pub bpsi_closed: bool,
    /// Some ψ' built from patterns with the contents of bψ, with `b(ψ') = bψ` and `B(ψ') = 0`.
    pub primitive: Option<FormalCochain>,
}

impl AppendixReport {
    pub fn b_matches(&self) -> bool {
        self.b_diffs.is_empty()
    }

    pub fn big_b_vanishes(&self) -> bool {
        self.big_b_psi.is_zero()
    }

    pub fn passed(&self) -> bool {
        self.b_matches() && self.big_b_vanishes()
    }
}

impl fmt::Display for AppendixReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "b(psi) == printed bpsi; B(psi) == 0");
        }
        if self.b_matches() {
            writeln!(f, "b(psi) == printed bpsi")?;
        } else {
            writeln!(f, "b(psi) != printed bpsi; {} pattern(s) differ:", self.b_diffs.len())?;
            for d in &self.b_diffs {
                writeln!(f, "  {d}")?;
            }
        }
        if self.big_b_vanishes() {
            writeln!(f, "B(psi) == 0")?;
        } else {
            writeln!(f, "B(psi) != 0: {}", self.big_b_psi)?;
        }
        writeln!(f, "b(printed bpsi) {} 0", if self.bpsi_closed { "==" } else { "!=" })?;
        match &self.primitive {
            Some(p) => write!(f, "a primitive psi' with b(psi') == printed bpsi and B(psi') == 0: {p}"),
            None => write!(f, "no primitive psi' with b(psi') == printed bpsi and B(psi') == 0"),
        }
    }
}

/// Compare `b(ψ)` with the printed `bψ` and check `B(ψ) = 0`. Missing sections count as zero.
pub fn verify_appendix(fixture: &Fixture) -> Result<AppendixReport, FormalError> {
    let psi = fixture.section("psi").cloned().unwrap_or_else(|| FormalCochain::zero(3));
    let printed = match fixture.section("bpsi") {
        Some(c) => normalize(c)?,
        None => FormalCochain::zero(psi.arity() + 1),
    };
    let b_psi = b_cochain(&psi)?;
    let computed = coefficient_map(&b_psi);
    let expected = coefficient_map(&printed);
    let mut keys: Vec<&Pattern> = computed.keys().chain(expected.keys()).collect();
    keys.sort();
    keys.dedup();
    let b_diffs = keys
        .into_iter()
        .filter_map(|p| {
            let c = computed.get(p).cloned().unwrap_or_else(Rational::zero);
            let e = expected.get(p).cloned().unwrap_or_else(Rational::zero);
            (c != e).then(|| PatternDiff { pattern: p.clone(), computed: c, printed: e })
        })
        .collect();
    let big_b_psi = big_b_cochain(&psi)?;
    let bpsi_closed = b_cochain(&printed)?.is_zero();
    let primitive = if printed.is_zero() { Some(FormalCochain::zero(psi.arity())) } else { solve_primitive(&printed)? };
    Ok(AppendixReport { b_psi, b_diffs, big_b_psi, bpsi_closed, primitive })
}

/// Solve `b(x) = target`, `B(x) = 0` over all patterns sharing a content with `target`.
pub fn solve_primitive(target: &FormalCochain) -> Result<Option<FormalCochain>, FormalError> {
    let arity = target.arity();
    if arity < 2 {
        return Ok(None);
    }
    let mut contents: Vec<_> = target.terms().keys().map(content).collect();
    contents.sort();
    contents.dedup();
    let unknowns: Vec<Pattern> =
        contents.iter().flat_map(|&(u, p, q)| patterns_with_content(arity - 1, u, p, q)).collect();
    let mut rows: BTreeMap<(bool, Pattern), usize> = BTreeMap::new();
    let mut columns = Vec::new();
    for x in &unknowns {
        let single = FormalCochain::from_terms(arity - 1, vec![(x.clone(), int(1))])?;
        let mut col = Vec::new();
        for (tag, image) in [(false, b_cochain(&single)?), (true, big_b_cochain(&single)?)] {
            for (p, c) in image.terms() {
                let next = rows.len();
                col.push((*rows.entry((tag, p.clone())).or_insert(next), c.clone()));
            }
        }
        columns.push(col);
    }
    for p in target.terms().keys() {
        let next = rows.len();
        rows.entry((false, p.clone())).or_insert(next);
    }
    let mut m = QMatrix::zeros(rows.len(), unknowns.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, c) in col {
            m.add_to(i, j, &c);
        }
    }
    let mut rhs = vec![Rational::zero(); rows.len()];
    for ((tag, p), &i) in &rows {
        if !tag {
            rhs[i] = target.coeff(p);
        }
    }
    Ok(m.solve(&rhs).map(|x| {
        let mut out = FormalCochain::zero(arity - 1);
        for (p, c) in unknowns.into_iter().zip(x) {
            if !c.is_zero() {
                out.add_term(p, c).expect("patterns of the right arity");
            }
        }
        out
    }))
}
