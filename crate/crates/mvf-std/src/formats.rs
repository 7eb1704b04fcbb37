//! JSON forms of the core types. Indices are 0-based everywhere, rationals
//! are `"p/q"` strings (`"p"` when the denominator is 1) and words are
//! strings of `0`/`1`, the empty word being `""`.

use std::path::Path;

use mvf_core::cantor::{DyadicElement, Rational, TreePair, Word};
use mvf_core::duality::{MvSpace, PointMap};
use mvf_core::fraisse::Chain;
use mvf_core::ramsey::{Verdict, WitnessCertificate};
use mvf_core::{FiniteMvAlgebra, Hom, Ideal, MvElement};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] mvf_core::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

/// The text of a payload: `@path` and existing paths are read, anything
/// else is taken as inline JSON.
pub fn load(arg: &str) -> Result<String> {
    let read = |path: &str| {
        std::fs::read_to_string(path).map_err(|source| FormatError::Io {
            path: path.to_owned(),
            source,
        })
    };
    if let Some(path) = arg.strip_prefix('@') {
        return read(path);
    }
    let trimmed = arg.trim_start();
    if !trimmed.starts_with(['[', '{', '"']) && Path::new(arg).is_file() {
        return read(arg);
    }
    Ok(arg.to_owned())
}

pub fn parse<T: DeserializeOwned>(arg: &str) -> Result<T> {
    Ok(serde_json::from_str(&load(arg)?)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub chains: Vec<u32>,
}

impl From<&FiniteMvAlgebra> for AlgebraJson {
    fn from(a: &FiniteMvAlgebra) -> Self {
        Self {
            chains: a.chains().to_vec(),
        }
    }
}

/// `[2,2,3]` or `{"chains":[2,2,3]}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum AlgebraInput {
    Bare(Vec<u32>),
    Object(AlgebraJson),
}

pub fn parse_algebra(arg: &str) -> Result<FiniteMvAlgebra> {
    let chains = match parse::<AlgebraInput>(arg)? {
        AlgebraInput::Bare(c) | AlgebraInput::Object(AlgebraJson { chains: c }) => c,
    };
    Ok(FiniteMvAlgebra::new(&chains)?)
}

/// A list of algebras, each bare or as an object.
pub fn parse_algebras(arg: &str) -> Result<Vec<FiniteMvAlgebra>> {
    let items: Vec<serde_json::Value> = parse(arg)?;
    items
        .iter()
        .map(|v| parse_algebra(&v.to_string()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub numerators: Vec<u32>,
}

impl From<&MvElement> for ElementJson {
    fn from(x: &MvElement) -> Self {
        Self {
            numerators: x.numerators().to_vec(),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ElementInput {
    Bare(Vec<u32>),
    Object(ElementJson),
}

pub fn parse_element(a: &FiniteMvAlgebra, arg: &str) -> Result<MvElement> {
    let numerators = match parse::<ElementInput>(arg)? {
        ElementInput::Bare(n) | ElementInput::Object(ElementJson { numerators: n }) => n,
    };
    Ok(a.element(numerators)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub support: Vec<usize>,
}

impl From<&Ideal> for IdealJson {
    fn from(i: &Ideal) -> Self {
        Self {
            support: i.support().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub sigma: Vec<usize>,
}

impl From<&Hom> for HomJson {
    fn from(h: &Hom) -> Self {
        Self {
            sigma: h.sigma().to_vec(),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum HomInput {
    Bare(Vec<usize>),
    Object(HomJson),
}

pub fn parse_sigma(arg: &str) -> Result<Vec<usize>> {
    Ok(match parse::<HomInput>(arg)? {
        HomInput::Bare(s) | HomInput::Object(HomJson { sigma: s }) => s,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub labels: Vec<u32>,
}

impl From<&MvSpace> for SpaceJson {
    fn from(s: &MvSpace) -> Self {
        Self {
            labels: s.labels().to_vec(),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SpaceInput {
    Bare(Vec<u32>),
    Object(SpaceJson),
}

pub fn parse_space(arg: &str) -> Result<MvSpace> {
    let labels = match parse::<SpaceInput>(arg)? {
        SpaceInput::Bare(l) | SpaceInput::Object(SpaceJson { labels: l }) => l,
    };
    Ok(MvSpace::new(labels)?)
}

pub fn point_map_json(f: &PointMap) -> Vec<usize> {
    f.map.clone()
}

pub fn format_rational(q: Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || FormatError::Invalid(format!("{s:?} is not a rational \"p/q\""));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: u64 = p.parse().map_err(|_| bad())?;
    let q: u64 = q.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub fn format_word(w: &Word) -> String {
    (0..w.len())
        .map(|i| if w.bit(i) { '1' } else { '0' })
        .collect()
}

pub fn parse_word(s: &str) -> Result<Word> {
    Ok(s.parse()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub prefix: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicJson {
    pub pieces: Vec<PieceJson>,
}

impl From<&DyadicElement> for DyadicJson {
    fn from(x: &DyadicElement) -> Self {
        Self {
            pieces: x
                .pieces()
                .iter()
                .map(|(w, q)| PieceJson {
                    prefix: format_word(w),
                    value: format_rational(*q),
                })
                .collect(),
        }
    }
}

impl DyadicJson {
    pub fn to_element(&self) -> Result<DyadicElement> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Ok((parse_word(&p.prefix)?, parse_rational(&p.value)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DyadicElement::from_pieces(&pieces)?)
    }
}

pub fn parse_dyadic(arg: &str) -> Result<DyadicElement> {
    parse::<DyadicJson>(arg)?.to_element()
}

/// One element or a list of elements.
pub fn parse_dyadics(arg: &str) -> Result<Vec<DyadicElement>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Input {
        One(DyadicJson),
        Many(Vec<DyadicJson>),
    }
    match parse::<Input>(arg)? {
        Input::One(x) => Ok(vec![x.to_element()?]),
        Input::Many(xs) => xs.iter().map(DyadicJson::to_element).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePairJson {
    pub source: Vec<String>,
    pub target: Vec<String>,
}

impl From<&TreePair> for TreePairJson {
    fn from(g: &TreePair) -> Self {
        Self {
            source: g.source().iter().map(format_word).collect(),
            target: g.target().iter().map(format_word).collect(),
        }
    }
}

impl TreePairJson {
    pub fn to_tree_pair(&self) -> Result<TreePair> {
        let words = |ws: &[String]| ws.iter().map(|w| parse_word(w)).collect::<Result<Vec<_>>>();
        Ok(TreePair::new(words(&self.source)?, words(&self.target)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDump {
    pub stages: Vec<AlgebraJson>,
    pub links: Vec<HomJson>,
}

impl From<&Chain> for ChainDump {
    fn from(c: &Chain) -> Self {
        Self {
            stages: c.stages().iter().map(AlgebraJson::from).collect(),
            links: c.links().iter().map(HomJson::from).collect(),
        }
    }
}

impl ChainDump {
    pub fn to_chain(&self) -> Result<Chain> {
        let stages = self
            .stages
            .iter()
            .map(|s| FiniteMvAlgebra::new(&s.chains))
            .collect::<mvf_core::Result<Vec<_>>>()?;
        if self.links.len() + 1 != stages.len() {
            return Err(FormatError::Invalid(format!(
                "{} stages need {} links, got {}",
                stages.len(),
                stages.len().saturating_sub(1),
                self.links.len()
            )));
        }
        let links = self
            .links
            .iter()
            .zip(stages.windows(2))
            .map(|(l, w)| Hom::new(w[0].clone(), w[1].clone(), l.sigma.clone()))
            .collect::<mvf_core::Result<Vec<_>>>()?;
        Ok(Chain::new(stages, links)?)
    }
}

/// `{"verdict":"refuted","coloring":[0,1,…]}`; the node count is left out
/// so that output does not depend on how the search was split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copies: Option<usize>,
}

impl From<&WitnessCertificate> for CertificateJson {
    fn from(c: &WitnessCertificate) -> Self {
        Self {
            verdict: c.verdict.name().to_owned(),
            coloring: c.coloring.clone(),
            positions: Some(c.positions),
            copies: Some(c.copies),
        }
    }
}

impl CertificateJson {
    pub fn verdict(&self) -> Result<Verdict> {
        match self.verdict.as_str() {
            "verified" => Ok(Verdict::Verified),
            "refuted" => Ok(Verdict::Refuted),
            other => Err(FormatError::Invalid(format!("unknown verdict {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_bare_and_wrapped() {
        let a = parse_algebra("[3,2,2]").unwrap();
        assert_eq!(a.chains(), &[2, 2, 3]);
        assert_eq!(parse_algebra(r#"{"chains":[2,2,3]}"#).unwrap(), a);
        assert!(parse_algebra("[0]").is_err());
        assert!(matches!(parse_algebra("[2,"), Err(FormatError::Json(_))));
        assert_eq!(
            parse_element(&a, r#"{"numerators":[1,0,2]}"#)
                .unwrap()
                .numerators(),
            &[1, 0, 2]
        );
        assert_eq!(parse_sigma("[0,0,1]").unwrap(), vec![0, 0, 1]);
        assert_eq!(
            parse_space(r#"{"labels":[2,4]}"#).unwrap().labels(),
            &[2, 4]
        );
        assert_eq!(
            parse_algebras(r#"[[1],{"chains":[2,2]}]"#).unwrap().len(),
            2
        );
    }

    #[test]
    fn rationals_and_words() {
        for s in ["0", "1", "1/2", "5/6"] {
            assert_eq!(format_rational(parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(parse_rational("2/4").unwrap()), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        for s in ["", "0", "101"] {
            assert_eq!(format_word(&parse_word(s).unwrap()), s);
        }
    }

    #[test]
    fn dyadic_round_trip() {
        let text = r#"{"pieces":[{"prefix":"0","value":"1/2"},{"prefix":"1","value":"0"}]}"#;
        let x = parse_dyadic(text).unwrap();
        assert_eq!(
            x,
            DyadicElement::basic(Rational::new(1, 2), &[parse_word("0").unwrap()]).unwrap()
        );
        assert_eq!(serde_json::to_string(&DyadicJson::from(&x)).unwrap(), text);
        let whole = DyadicJson::from(&DyadicElement::one());
        assert_eq!(
            whole.pieces,
            vec![PieceJson {
                prefix: String::new(),
                value: "1".into()
            }]
        );
        assert_eq!(parse_dyadics(&format!("[{text},{text}]")).unwrap().len(), 2);
    }

    #[test]
    fn tree_pair_and_certificate() {
        let text = r#"{"source":["0","10","11"],"target":["10","11","0"]}"#;
        let g: TreePairJson = serde_json::from_str(text).unwrap();
        let pair = g.to_tree_pair().unwrap();
        assert_eq!(
            serde_json::to_string(&TreePairJson::from(&pair)).unwrap(),
            text
        );
        let c: CertificateJson =
            serde_json::from_str(r#"{"verdict":"refuted","coloring":[0,1,0]}"#).unwrap();
        assert_eq!(c.verdict().unwrap(), Verdict::Refuted);
        assert_eq!(c.coloring, Some(vec![0, 1, 0]));
        assert!(CertificateJson {
            verdict: "maybe".into(),
            coloring: None,
            positions: None,
            copies: None
        }
        .verdict()
        .is_err());
    }

    #[test]
    fn chain_dump_round_trip() {
        let chain = mvf_core::fraisse::generic_chain(3).unwrap();
        let dump = ChainDump::from(&chain);
        let text = serde_json::to_string(&dump).unwrap();
        let back: ChainDump = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_chain().unwrap(), chain);
        let broken = ChainDump {
            stages: dump.stages.clone(),
            links: vec![],
        };
        assert!(broken.to_chain().is_err());
    }
}
