//! Form, curve and polynomial files, and integer-coefficient forms.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::finitefield::{construct_field, FieldDescriptor};
use crate::foliation::ProjOneForm;
use crate::multipoly::{parse_terms, Monomial, MultiPoly};

/// `key=value` pairs from a header line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Header {
    pub p: Option<u64>,
    pub k: Option<u32>,
    pub d: Option<u32>,
}

/// A parsed input file: optional header and the polynomial lines with
/// their 1-based line numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub header: Header,
    pub lines: Vec<(usize, String)>,
}

fn header_value<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Parse { line, column: 1, message: format!("bad value '{}' for {key}", v.trim()) })
}

/// Splits a file into header and body. `#` starts a comment; a line
/// containing `=` is a header line.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut header = Header::default();
    let mut seen_header = false;
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.contains('=') {
            if seen_header || !lines.is_empty() {
                return Err(Error::Parse { line: n, column: 1, message: "the header must come first, once".into() });
            }
            seen_header = true;
            for kv in line.split(',') {
                let (key, value) = kv.split_once('=').ok_or_else(|| Error::Parse {
                    line: n,
                    column: 1,
                    message: format!("expected key=value, got '{}'", kv.trim()),
                })?;
                match key.trim() {
                    "p" => header.p = Some(header_value(n, "p", value)?),
                    "k" => header.k = Some(header_value(n, "k", value)?),
                    "d" => header.d = Some(header_value(n, "d", value)?),
                    other => {
                        return Err(Error::Parse { line: n, column: 1, message: format!("unknown header key '{other}'") })
                    }
                }
            }
            continue;
        }
        lines.push((n, line.to_string()));
    }
    Ok(Document { header, lines })
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn agree<T: PartialEq + std::fmt::Display + Copy>(what: &str, file: Option<T>, flag: Option<T>) -> Result<Option<T>> {
    match (file, flag) {
        (Some(a), Some(b)) if a != b => {
            Err(Error::InvalidArgument(format!("inconsistent headers: {what} = {a} in the file but {b} on the command line")))
        }
        (a, b) => Ok(a.or(b)),
    }
}

/// Homogeneous polynomial in `x, y, z` with unbounded integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegerPoly {
    terms: BTreeMap<[u32; 3], BigInt>,
}

impl IntegerPoly {
    pub fn parse(text: &str, line: usize) -> Result<Self> {
        let mut out = IntegerPoly::default();
        for t in parse_terms(text, 3, line)? {
            if t.gpow.is_some() {
                return Err(Error::Parse { line, column: 1, message: "'g' is not an integer coefficient".into() });
            }
            let c = BigInt::from_biguint(if t.negative { Sign::Minus } else { Sign::Plus }, t.coeff);
            out.add_term(t.exps, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: [u32; 3], c: BigInt) {
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    fn content(&self) -> BigUint {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c)).magnitude().clone()
    }

    fn div_exact(&self, c: &BigInt) -> IntegerPoly {
        IntegerPoly { terms: self.terms.iter().map(|(e, v)| (*e, v / c)).collect() }
    }

    /// Coefficientwise reduction into `field` (prime subfield).
    pub fn reduce(&self, field: &FieldDescriptor) -> MultiPoly {
        let p = BigInt::from(field.p());
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (Monomial::new(e), c.mod_floor(&p).to_u64().expect("residue fits")))
            .collect();
        MultiPoly::from_terms(field, 3, terms)
    }
}

impl std::fmt::Display for IntegerPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // graded-lex descending, matching the finite-field printer
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| Monomial::new(b.0).cmp(&Monomial::new(a.0)));
        for (i, (e, c)) in ts.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(['x', 'y', 'z'])
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
                .collect();
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono.join("*"),
                (false, false) => format!("{mag}*{}", mono.join("*")),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                write!(f, "{}{body}", if c.is_negative() { "-" } else { "" })?;
            } else {
                write!(f, " {sign} {body}")?;
            }
        }
        Ok(())
    }
}

/// A degree-`d` form with integer coefficients, divided by its content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerForm {
    pub comps: [IntegerPoly; 3],
    pub d: u32,
    /// The integer divided out during normalization.
    pub content: BigUint,
}

impl IntegerForm {
    pub fn new(a: IntegerPoly, b: IntegerPoly, c: IntegerPoly) -> Result<Self> {
        let comps = [a, b, c];
        let deg = comps
            .iter()
            .filter_map(IntegerPoly::degree)
            .max()
            .ok_or_else(|| Error::InvalidForm("all components vanish".into()))?;
        for (f, name) in comps.iter().zip(["A", "B", "C"]) {
            if !f.is_zero() && (!f.is_homogeneous() || f.degree() != Some(deg)) {
                return Err(Error::InvalidForm(format!("{name} must be homogeneous of degree {deg}")));
            }
        }
        if deg == 0 {
            return Err(Error::InvalidForm("components must have positive degree".into()));
        }
        let mut euler = IntegerPoly::default();
        for (v, f) in comps.iter().enumerate() {
            for (e, c) in &f.terms {
                let mut e = *e;
                e[v] += 1;
                euler.add_term(e, c.clone());
            }
        }
        if !euler.is_zero() {
            return Err(Error::InvalidForm(format!("Euler relation fails: xA + yB + zC = {euler}")));
        }
        let g = comps.iter().fold(BigUint::zero(), |g, f| g.gcd(&f.content()));
        let gi = BigInt::from(g.clone());
        let comps = comps.map(|f| f.div_exact(&gi));
        Ok(IntegerForm { comps, d: deg - 1, content: g })
    }

    /// `ω ⊗ F_{p^k}`; a component vanishing or a common factor appearing
    /// mod `p` is rejected.
    pub fn reduce_mod_p(&self, p: u64, k: u32) -> Result<ProjOneForm> {
        let field = construct_field(p, k)?;
        let red: Vec<MultiPoly> = self.comps.iter().map(|f| f.reduce(&field)).collect();
        for ((f, r), name) in self.comps.iter().zip(&red).zip(["A", "B", "C"]) {
            if !f.is_zero() && r.is_zero() {
                return Err(Error::InvalidForm(format!("degenerate reduction mod {p}: {name} vanishes")));
            }
        }
        let [a, b, c]: [MultiPoly; 3] = red.try_into().expect("three components");
        ProjOneForm::new(a, b, c, self.d).map_err(|e| match e {
            Error::InvalidForm(m) => Error::InvalidForm(format!("degenerate reduction mod {p}: {m}")),
            e => e,
        })
    }
}

impl std::fmt::Display for IntegerForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = &self.comps;
        write!(f, "({a})dx + ({b})dy + ({c})dz")
    }
}

/// What a form file describes.
#[derive(Clone, Debug)]
pub enum ParsedForm {
    Modular(ProjOneForm),
    Integer(IntegerForm),
}

/// Parses a form file: optional header `p=…, k=…, d=…` and three
/// polynomial lines `A`, `B`, `C`. Without `p` the coefficients are integers.
pub fn parse_form(text: &str) -> Result<ParsedForm> {
    let doc = parse_document(text)?;
    if doc.lines.len() != 3 {
        return Err(Error::Parse {
            line: doc.lines.get(3).map_or(1, |l| l.0),
            column: 1,
            message: format!("a form needs exactly three polynomial lines, found {}", doc.lines.len()),
        });
    }
    let form = match doc.header.p {
        Some(p) => {
            let field = construct_field(p, doc.header.k.unwrap_or(1))?;
            let q: Vec<MultiPoly> =
                doc.lines.iter().map(|(n, l)| MultiPoly::parse_at_line(&field, 3, l, *n)).collect::<Result<_>>()?;
            let d = q.iter().filter_map(MultiPoly::degree).max().unwrap_or(1).saturating_sub(1);
            let [a, b, c]: [MultiPoly; 3] = q.try_into().expect("three lines");
            ParsedForm::Modular(ProjOneForm::new(a, b, c, d)?)
        }
        None => {
            if doc.header.k.is_some() {
                return Err(Error::InvalidArgument("inconsistent headers: k given without p".into()));
            }
            let q: Vec<IntegerPoly> =
                doc.lines.iter().map(|(n, l)| IntegerPoly::parse(l, *n)).collect::<Result<_>>()?;
            let [a, b, c]: [IntegerPoly; 3] = q.try_into().expect("three lines");
            ParsedForm::Integer(IntegerForm::new(a, b, c)?)
        }
    };
    let d = match &form {
        ParsedForm::Modular(w) => w.degree(),
        ParsedForm::Integer(f) => f.d,
    };
    if let Some(hd) = doc.header.d {
        if hd != d {
            return Err(Error::InvalidArgument(format!("inconsistent headers: d = {hd} but the components give d = {d}")));
        }
    }
    Ok(form)
}

/// Resolves a parsed form against `--p`/`--k`, reducing integer forms.
pub fn resolve_form(parsed: &ParsedForm, p: Option<u64>, k: Option<u32>) -> Result<ProjOneForm> {
    match parsed {
        ParsedForm::Modular(w) => {
            agree("p", Some(w.field().p()), p)?;
            agree("k", Some(w.field().k()), k)?;
            Ok(w.clone())
        }
        ParsedForm::Integer(f) => {
            let p = p.ok_or_else(|| Error::InvalidArgument("integer form: give --p to reduce it".into()))?;
            f.reduce_mod_p(p, k.unwrap_or(1))
        }
    }
}

/// Parses a single-polynomial file. `p`, `k` come from the header or the
/// flags; the number of variables is the highest variable used (x, y, z).
pub fn parse_poly_file(text: &str, p: Option<u64>, k: Option<u32>, nvars: Option<usize>) -> Result<MultiPoly> {
    let doc = parse_document(text)?;
    if doc.header.d.is_some() {
        return Err(Error::InvalidArgument("a polynomial file has no d header".into()));
    }
    let p = agree("p", doc.header.p, p)?.ok_or_else(|| Error::InvalidArgument("no characteristic: give --p".into()))?;
    let k = agree("k", doc.header.k, k)?.unwrap_or(1);
    if doc.lines.len() != 1 {
        return Err(Error::Parse {
            line: doc.lines.get(1).map_or(1, |l| l.0),
            column: 1,
            message: format!("expected one polynomial line, found {}", doc.lines.len()),
        });
    }
    let (n, line) = &doc.lines[0];
    let field = construct_field(p, k)?;
    let raw = parse_terms(line, 3, *n)?;
    let used = raw
        .iter()
        .filter(|t| !t.coeff.is_zero())
        .flat_map(|t| (0..3).filter(move |&v| t.exps[v] > 0))
        .max()
        .map_or(1, |v| v + 1);
    let nv = match nvars {
        Some(nv) if nv < used => {
            return Err(Error::InvalidArgument(format!("polynomial uses {used} variables, at most {nv} allowed")))
        }
        Some(nv) => nv,
        None => used,
    };
    MultiPoly::parse_at_line(&field, nv, line, *n)
}
