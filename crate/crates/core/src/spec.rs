//! Convexity specifications: symbolic `(a,b,c,d)` tuples, named presets,
//! explicit per-pair length matrices, and their resolution against a graph.
//!
//! A path between `i` and `j` qualifies when its length lies in
//! `[a_ij, b_ij]` and every chord length lies in `[c_ij, d_ij]`.

use std::fmt;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{all_pairs_longest, Graph, DEFAULT_LONGEST_PATH_CAP};

/// One coordinate of a symbolic tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundSymbol {
    /// A fixed positive integer.
    Const(usize),
    /// Distance between the pair.
    Sigma,
    /// Length of a longest path between the pair.
    Ell,
    /// No restriction.
    Infinity,
    /// `n - 1`.
    NMinus,
    /// `min(k, distance)`.
    MinSigma(usize),
}

impl BoundSymbol {
    pub fn parse(tok: &str) -> Result<Self> {
        let tok = tok.trim();
        let sym = match tok {
            "sigma" => BoundSymbol::Sigma,
            "ell" => BoundSymbol::Ell,
            "inf" => BoundSymbol::Infinity,
            "nminus" => BoundSymbol::NMinus,
            _ => {
                if let Some(k) = tok.strip_prefix("min:") {
                    BoundSymbol::MinSigma(parse_positive(k)?)
                } else {
                    BoundSymbol::Const(parse_positive(tok)?)
                }
            }
        };
        Ok(sym)
    }
}

impl fmt::Display for BoundSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundSymbol::Const(k) => write!(f, "{k}"),
            BoundSymbol::Sigma => write!(f, "sigma"),
            BoundSymbol::Ell => write!(f, "ell"),
            BoundSymbol::Infinity => write!(f, "inf"),
            BoundSymbol::NMinus => write!(f, "nminus"),
            BoundSymbol::MinSigma(k) => write!(f, "min:{k}"),
        }
    }
}

fn parse_positive(tok: &str) -> Result<usize> {
    match tok.trim().parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(Error::MalformedToken(tok.to_string())),
    }
}

/// A matrix entry; `Unbounded` is serialized as `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(usize),
    Unbounded,
}

impl Length {
    fn to_raw(self) -> i64 {
        match self {
            Length::Finite(k) => k as i64,
            Length::Unbounded => -1,
        }
    }
}

/// A validated symmetric `n x n` length matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LengthMatrix {
    n: usize,
    entries: Vec<Length>,
}

impl LengthMatrix {
    /// Off-diagonal entries all equal to `value`.
    pub fn constant(n: usize, value: Length) -> Self {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { Length::Finite(0) } else { value })
            .collect();
        LengthMatrix { n, entries }
    }

    /// Validates a row-major matrix in serialized form (`-1` = unbounded).
    pub fn from_raw(name: &str, n: usize, rows: &[Vec<i64>]) -> Result<Self> {
        if rows.len() != n {
            return Err(Error::MatrixShapeMismatch {
                matrix: name.into(),
                detail: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::MatrixShapeMismatch {
                matrix: name.into(),
                detail: format!("row {} has {} entries, expected {n}", i + 1, r.len()),
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                if value < -1 {
                    return Err(Error::NegativeEntryOtherThanSentinel {
                        matrix: name.into(),
                        i: i + 1,
                        j: j + 1,
                        value,
                    });
                }
                entries.push(if value == -1 {
                    Length::Unbounded
                } else {
                    Length::Finite(value as usize)
                });
            }
        }
        for i in 0..n {
            if entries[i * n + i] != Length::Finite(0) {
                return Err(Error::NonzeroDiagonal {
                    matrix: name.into(),
                    i: i + 1,
                });
            }
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::AsymmetricMatrix {
                        matrix: name.into(),
                        i: i + 1,
                        j: j + 1,
                    });
                }
            }
        }
        Ok(LengthMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Length {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn to_raw(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|e| e.to_raw()).collect())
            .collect()
    }
}

/// The four per-pair matrices of a matrix-mode spec.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixBounds {
    pub min_length: LengthMatrix,
    pub max_length: LengthMatrix,
    pub min_chord: LengthMatrix,
    pub max_chord: LengthMatrix,
}

impl MatrixBounds {
    pub fn n(&self) -> usize {
        self.min_length.n()
    }

    fn all(&self) -> [&LengthMatrix; 4] {
        [&self.min_length, &self.max_length, &self.min_chord, &self.max_chord]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpecMode {
    Symbolic([BoundSymbol; 4]),
    Matrix(Box<MatrixBounds>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexitySpec {
    pub mode: SpecMode,
    /// Canonical preset name when the spec came from a preset.
    pub preset: Option<String>,
}

impl ConvexitySpec {
    pub fn symbolic(a: BoundSymbol, b: BoundSymbol, c: BoundSymbol, d: BoundSymbol) -> Self {
        ConvexitySpec {
            mode: SpecMode::Symbolic([a, b, c, d]),
            preset: None,
        }
    }

    /// Constant tuple `(a,b,c,d)` of positive integers.
    pub fn constant(a: usize, b: usize, c: usize, d: usize) -> Self {
        use BoundSymbol::Const;
        Self::symbolic(Const(a), Const(b), Const(c), Const(d))
    }

    pub fn matrices(m: MatrixBounds) -> Self {
        ConvexitySpec {
            mode: SpecMode::Matrix(Box::new(m)),
            preset: None,
        }
    }

    pub fn symbols(&self) -> Option<[BoundSymbol; 4]> {
        match &self.mode {
            SpecMode::Symbolic(t) => Some(*t),
            SpecMode::Matrix(_) => None,
        }
    }

    /// Text accepted by [`parse_spec`] that reproduces this spec, or `None`
    /// in matrix mode.
    pub fn spec_string(&self) -> Option<String> {
        match (&self.preset, &self.mode) {
            (Some(p), _) => Some(format!("preset:{p}")),
            (None, SpecMode::Symbolic([a, b, c, d])) => Some(format!("abcd:{a},{b},{c},{d}")),
            (None, SpecMode::Matrix(_)) => None,
        }
    }
}

impl fmt::Display for ConvexitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mode {
            SpecMode::Symbolic([a, b, c, d]) => {
                if let Some(p) = &self.preset {
                    write!(f, "{p} ")?;
                }
                write!(f, "({a},{b},{c},{d})")
            }
            SpecMode::Matrix(m) => write!(f, "matrices (n={})", m.n()),
        }
    }
}

/// Names accepted after `preset:`; parameterized ones take `:<k>` (or `:<k>,<l>`).
pub const PRESET_NAMES: &[&str] = &[
    "geodesic",
    "monophonic",
    "g3",
    "m3",
    "gk",
    "p3",
    "p3star",
    "triangle",
    "total",
    "detour",
    "allpath",
    "gk_new",
    "mk",
    "klpath",
    "kcycle",
    "hamiltonian",
];

/// The eleven classic path convexities, as preset strings.
pub const LITERATURE_PRESETS: [&str; 11] = [
    "preset:geodesic",
    "preset:monophonic",
    "preset:g3",
    "preset:gk:2",
    "preset:m3",
    "preset:p3",
    "preset:p3star",
    "preset:triangle",
    "preset:total",
    "preset:detour",
    "preset:allpath",
];

/// Parses `preset:<name>` or `abcd:<a>,<b>,<c>,<d>`.
pub fn parse_spec(text: &str) -> Result<ConvexitySpec> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("preset:") {
        parse_preset(rest)
    } else if let Some(rest) = text.strip_prefix("abcd:") {
        let toks: Vec<&str> = rest.split(',').collect();
        if toks.len() != 4 {
            return Err(Error::MalformedToken(rest.to_string()));
        }
        Ok(ConvexitySpec::symbolic(
            BoundSymbol::parse(toks[0])?,
            BoundSymbol::parse(toks[1])?,
            BoundSymbol::parse(toks[2])?,
            BoundSymbol::parse(toks[3])?,
        ))
    } else {
        Err(Error::MalformedToken(text.to_string()))
    }
}

fn parse_preset(text: &str) -> Result<ConvexitySpec> {
    use BoundSymbol::*;
    let (name, param) = match text.split_once(':') {
        Some((name, p)) => (name, Some(p)),
        None => (text, None),
    };
    let param_k = || -> Result<usize> {
        match param {
            None | Some("") => Err(Error::MissingParameter(name.to_string())),
            Some(p) => parse_positive(p),
        }
    };
    let no_param = || -> Result<()> {
        match param {
            None => Ok(()),
            Some(p) => Err(Error::MalformedToken(format!("{name}:{p}"))),
        }
    };
    let (tuple, canonical) = match name {
        "geodesic" | "monophonic" | "g3" | "m3" | "p3" | "p3star" | "triangle" | "total"
        | "detour" | "allpath" | "hamiltonian" => {
            no_param()?;
            let t = match name {
                "geodesic" => [Sigma, Sigma, Const(1), Const(1)],
                "monophonic" => [Const(2), Infinity, Const(1), Const(1)],
                "g3" => [Const(3), Sigma, Const(1), Const(1)],
                "m3" => [Const(3), Infinity, Const(1), Const(1)],
                "p3" => [Const(2), Const(2), Const(1), Const(2)],
                "p3star" => [Const(2), Const(2), Const(1), Const(1)],
                "triangle" => [Const(2), Infinity, Const(1), Const(2)],
                "total" => [Const(2), Infinity, Const(3), Infinity],
                "detour" => [Ell, Ell, Const(1), Infinity],
                "allpath" => [Const(2), Infinity, Const(1), Infinity],
                "hamiltonian" => [NMinus, NMinus, Const(1), Infinity],
                _ => unreachable!(),
            };
            (t, name.to_string())
        }
        "gk" => {
            let k = param_k()?;
            ([Sigma, MinSigma(k), Const(1), Const(1)], format!("gk:{k}"))
        }
        "gk_new" => {
            let k = param_k()?;
            ([Const(k), Sigma, Const(1), Const(1)], format!("gk_new:{k}"))
        }
        "mk" => {
            let k = param_k()?;
            ([Const(k), Infinity, Const(1), Const(1)], format!("mk:{k}"))
        }
        "kcycle" => {
            let k = param_k()?;
            if k < 2 {
                return Err(Error::MalformedToken(format!("kcycle:{k}")));
            }
            let m = Const(k - 1);
            ([m, m, m, m], format!("kcycle:{k}"))
        }
        "klpath" => {
            let p = match param {
                None | Some("") => return Err(Error::MissingParameter(name.to_string())),
                Some(p) => p,
            };
            let (k, l) = p
                .split_once(',')
                .ok_or_else(|| Error::MissingParameter(name.to_string()))?;
            let (k, l) = (parse_positive(k)?, parse_positive(l)?);
            ([Const(k), Const(l), Const(1), Const(1)], format!("klpath:{k},{l}"))
        }
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    Ok(ConvexitySpec {
        mode: SpecMode::Symbolic(tuple),
        preset: Some(canonical),
    })
}

/// Length/chord bounds for one vertex pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PairBounds {
    pub min_length: usize,
    pub max_length: usize,
    pub min_chord: usize,
    pub max_chord: usize,
}

impl PairBounds {
    #[inline]
    pub fn chord_allowed(&self, length: usize) -> bool {
        self.min_chord <= length && length <= self.max_chord
    }
}

/// Concrete per-pair bounds for one graph. Symmetric, zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResolvedBounds {
    n: usize,
    entries: Vec<PairBounds>,
}

impl ResolvedBounds {
    /// Same bounds for every off-diagonal pair.
    pub fn uniform(n: usize, bounds: PairBounds) -> Self {
        let zero = PairBounds {
            min_length: 0,
            max_length: 0,
            min_chord: 0,
            max_chord: 0,
        };
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { zero } else { bounds })
            .collect();
        ResolvedBounds { n, entries }
    }

    fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> PairBounds) -> Self {
        let mut rb = Self::uniform(n, PairBounds {
            min_length: 0,
            max_length: 0,
            min_chord: 0,
            max_chord: 0,
        });
        for i in 1..=n {
            for j in i + 1..=n {
                let b = f(i, j);
                rb.entries[(i - 1) * n + (j - 1)] = b;
                rb.entries[(j - 1) * n + (i - 1)] = b;
            }
        }
        rb
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn pair(&self, i: usize, j: usize) -> PairBounds {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// The four matrices `[A, B, C, D]`, row-major.
    pub fn matrices(&self) -> [Vec<Vec<usize>>; 4] {
        let pick = |f: fn(&PairBounds) -> usize| -> Vec<Vec<usize>> {
            self.entries
                .chunks(self.n)
                .map(|r| r.iter().map(f).collect())
                .collect()
        };
        [
            pick(|b| b.min_length),
            pick(|b| b.max_length),
            pick(|b| b.min_chord),
            pick(|b| b.max_chord),
        ]
    }
}

/// Evaluates `spec` against `g` with the default longest-path cap.
pub fn resolve_bounds(spec: &ConvexitySpec, g: &Graph) -> Result<ResolvedBounds> {
    resolve_bounds_capped(spec, g, DEFAULT_LONGEST_PATH_CAP)
}

pub fn resolve_bounds_capped(
    spec: &ConvexitySpec,
    g: &Graph,
    longest_path_cap: usize,
) -> Result<ResolvedBounds> {
    let n = g.n();
    let top = n.saturating_sub(1);
    match &spec.mode {
        SpecMode::Symbolic(tuple) => {
            let longest = if tuple.contains(&BoundSymbol::Ell) {
                Some(all_pairs_longest(g, longest_path_cap)?)
            } else {
                None
            };
            let eval = |sym: BoundSymbol, i: usize, j: usize| -> usize {
                match sym {
                    BoundSymbol::Const(k) => k,
                    BoundSymbol::Sigma => g.dist(i, j),
                    BoundSymbol::Ell => longest.as_ref().expect("computed above")[(i - 1) * n + (j - 1)],
                    BoundSymbol::Infinity | BoundSymbol::NMinus => top,
                    BoundSymbol::MinSigma(k) => k.min(g.dist(i, j)),
                }
            };
            let [a, b, c, d] = *tuple;
            Ok(ResolvedBounds::from_fn(n, |i, j| PairBounds {
                min_length: eval(a, i, j),
                max_length: eval(b, i, j),
                min_chord: eval(c, i, j),
                max_chord: eval(d, i, j),
            }))
        }
        SpecMode::Matrix(m) => {
            for (name, mat) in ["A", "B", "C", "D"].iter().zip(m.all()) {
                if mat.n() != n {
                    return Err(Error::MatrixShapeMismatch {
                        matrix: name.to_string(),
                        detail: format!("matrix is {0}x{0} but the graph has {n} vertices", mat.n()),
                    });
                }
            }
            let eval = |len: Length| match len {
                Length::Finite(k) => k,
                Length::Unbounded => top,
            };
            Ok(ResolvedBounds::from_fn(n, |i, j| PairBounds {
                min_length: eval(m.min_length.get(i, j)),
                max_length: eval(m.max_length.get(i, j)),
                min_chord: eval(m.min_chord.get(i, j)),
                max_chord: eval(m.max_chord.get(i, j)),
            }))
        }
    }
}

/// On-disk matrix format: `{"n": .., "A": [[..]], "B": .., "C": .., "D": ..}`,
/// with `-1` standing for an unbounded entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<i64>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<i64>>,
}

impl MatrixFile {
    pub fn from_bounds(m: &MatrixBounds) -> Self {
        MatrixFile {
            n: m.n(),
            a: m.min_length.to_raw(),
            b: m.max_length.to_raw(),
            c: m.min_chord.to_raw(),
            d: m.max_chord.to_raw(),
        }
    }

    pub fn into_spec(self) -> Result<ConvexitySpec> {
        Ok(ConvexitySpec::matrices(MatrixBounds {
            min_length: LengthMatrix::from_raw("A", self.n, &self.a)?,
            max_length: LengthMatrix::from_raw("B", self.n, &self.b)?,
            min_chord: LengthMatrix::from_raw("C", self.n, &self.c)?,
            max_chord: LengthMatrix::from_raw("D", self.n, &self.d)?,
        }))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix file serializes")
    }
}

pub fn parse_matrix_spec(json: &str) -> Result<ConvexitySpec> {
    let file: MatrixFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_spec()
}

pub fn load_matrix_spec(path: impl AsRef<FsPath>) -> Result<ConvexitySpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_matrix_spec(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}
