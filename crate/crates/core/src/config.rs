//! Job configuration: whitespace-separated `key=value` tokens (one or more
//! per line, `#` starts a comment) or a flat JSON object with the same keys.
//!
//! ```text
//! type=gl d=2 qf=box:2
//! type=so rank=5 qf=iota:1     # so(5), half-integer weights
//! type=B rank=2 qf=list:(0,-1);(-1,0) q0=1,3,5/2
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::Specialization;
use crate::cartan::{CartanDatum, FiniteType, OrbitTable, QfSpec, Weight, WeylGroup, MAX_BOX};
use crate::error::{Error, Result};

pub const KEYS: &[&str] = &["type", "rank", "d", "qf", "qg", "q0", "box", "mu", "doubled"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DatumSpec {
    Abstract { ty: FiniteType, rank: usize },
    Gl { d: usize },
    So { d: usize },
    Sp { d: usize },
}

/// A validated configuration. Every field is optional at this level; each
/// command states which ones it needs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct JobConfig {
    pub datum: Option<DatumSpec>,
    /// Weights are stored doubled (half-integer coordinates allowed).
    pub doubled: bool,
    pub qf: Option<QfSpec>,
    pub qg: Option<QfSpec>,
    pub q0: Vec<Specialization>,
    /// Truncation window for affine checks.
    pub window: Option<usize>,
    pub mu: Option<Weight>,
    /// Matrix size for Springer counts.
    pub d: Option<usize>,
}

impl JobConfig {
    pub fn cartan(&self) -> Result<CartanDatum> {
        match &self.datum {
            None => Err(Error::Config { line: 0, key: "type".into(), reason: "a root datum is required".into() }),
            Some(DatumSpec::Abstract { ty, rank }) => CartanDatum::abstract_type(*ty, *rank),
            Some(DatumSpec::Gl { d }) => CartanDatum::gl(*d),
            Some(DatumSpec::So { d }) => CartanDatum::so(*d, self.doubled),
            Some(DatumSpec::Sp { d }) => CartanDatum::sp(*d, self.doubled),
        }
    }

    pub fn group(&self) -> Result<Arc<WeylGroup>> {
        WeylGroup::new(Arc::new(self.cartan()?))
    }

    fn spec(&self, key: &str) -> Result<&QfSpec> {
        let s = if key == "qf" { &self.qf } else { &self.qg };
        s.as_ref().ok_or_else(|| Error::Config { line: 0, key: key.into(), reason: "required by this command".into() })
    }

    pub fn table_f(&self) -> Result<Arc<OrbitTable>> {
        Ok(Arc::new(OrbitTable::build(self.group()?, self.spec("qf")?)?))
    }

    /// The `qg` table over the same group as `qf`.
    pub fn tables_fg(&self) -> Result<(Arc<OrbitTable>, Arc<OrbitTable>)> {
        let g = self.group()?;
        let f = OrbitTable::build(g.clone(), self.spec("qf")?)?;
        let h = OrbitTable::build(g, self.spec("qg")?)?;
        Ok((Arc::new(f), Arc::new(h)))
    }
}

struct Entry {
    line: usize,
    value: String,
}

fn config_error(line: usize, key: &str, reason: impl Into<String>) -> Error {
    Error::Config { line, key: key.into(), reason: reason.into() }
}

fn tokens_from_text(text: &str, out: &mut BTreeMap<String, Entry>, errors: &mut Vec<Error>) {
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        for tok in content.split_whitespace() {
            match tok.split_once('=') {
                Some((key, value)) if !key.is_empty() => {
                    out.insert(key.to_string(), Entry { line, value: value.to_string() });
                }
                _ => errors.push(config_error(line, tok, "expected key=value")),
            }
        }
    }
}

fn tokens_from_json(text: &str, out: &mut BTreeMap<String, Entry>, errors: &mut Vec<Error>) {
    let value: serde_json::Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => {
            errors.push(config_error(e.line(), "", format!("invalid JSON: {e}")));
            return;
        }
    };
    let Some(obj) = value.as_object() else {
        errors.push(config_error(1, "", "expected a JSON object"));
        return;
    };
    for (key, v) in obj {
        // report the line where the key first appears
        let line = text.lines().position(|l| l.contains(&format!("\"{key}\""))).map_or(1, |p| p + 1);
        let value = match v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::Bool(b) => b.to_string(),
            serde_json::Value::Array(items) => {
                items.iter().map(|i| i.as_str().map_or_else(|| i.to_string(), str::to_string)).collect::<Vec<_>>().join(",")
            }
            _ => {
                errors.push(config_error(line, key, "unsupported JSON value"));
                continue;
            }
        };
        out.insert(key.clone(), Entry { line, value });
    }
}

fn parse_usize(e: &Entry, key: &str) -> Result<usize> {
    e.value.parse().map_err(|_| config_error(e.line, key, format!("`{}` is not a nonnegative integer", e.value)))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            let n: BigInt = n.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Coordinates with denominators dividing 2.
fn parse_coords(s: &str) -> Option<Vec<BigRational>> {
    let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if inner.is_empty() {
        return Some(Vec::new());
    }
    let two = BigInt::from(2);
    inner
        .split(',')
        .map(|c| parse_rational(c).filter(|r| (r * BigRational::from_integer(two.clone())).is_integer()))
        .collect()
}

fn has_half(cs: &[BigRational]) -> bool {
    cs.iter().any(|c| !c.is_integer())
}

fn to_weight(cs: &[BigRational], scale: i64) -> Weight {
    Weight(cs.iter().map(|c| (c * BigRational::from_integer(scale.into())).to_integer().try_into().unwrap_or(i64::MAX)).collect())
}

enum RawQf {
    Ready(QfSpec),
    List(Vec<Vec<BigRational>>),
}

fn parse_qf(e: &Entry, key: &str) -> Result<RawQf> {
    let v = e.value.trim();
    let bad = |reason: String| config_error(e.line, key, reason);
    let bound = |n: &str| -> Result<usize> {
        let n: usize = n.parse().map_err(|_| bad(format!("bad bound `{n}`")))?;
        if n > MAX_BOX {
            return Err(bad(format!("bound {n} exceeds the cap of {MAX_BOX}")));
        }
        Ok(n)
    };
    let spec = match v.split_once(':') {
        Some(("box", n)) => {
            let n = bound(n)?;
            if n == 0 {
                return Err(bad("box size must be positive".into()));
            }
            QfSpec::Box(n)
        }
        Some(("iota", n)) => {
            let n = bound(n)?;
            if n == 0 {
                return Err(bad("iota bound must be positive".into()));
            }
            QfSpec::Iota(n)
        }
        Some(("jmath", n)) => QfSpec::Jmath(bound(n)?),
        Some(("list", items)) => {
            let ws: Option<Vec<Vec<BigRational>>> = items.split(';').map(parse_coords).collect();
            let ws = ws.ok_or_else(|| bad(format!("malformed weight list `{items}`")))?;
            if ws.is_empty() || ws.iter().any(Vec::is_empty) {
                return Err(bad("empty weight".into()));
            }
            return Ok(RawQf::List(ws));
        }
        None if v == "regular" => QfSpec::Regular,
        None if v == "zero" => QfSpec::Zero,
        _ => return Err(bad(format!("unknown orbit spec `{v}`"))),
    };
    Ok(RawQf::Ready(spec))
}

/// Parses `text` and then applies `overrides` (extra `key=value` tokens).
pub fn parse_config_with(text: &str, overrides: &[String]) -> std::result::Result<JobConfig, Vec<Error>> {
    let mut entries = BTreeMap::new();
    let mut errors = Vec::new();
    if text.trim_start().starts_with('{') {
        tokens_from_json(text, &mut entries, &mut errors);
    } else {
        tokens_from_text(text, &mut entries, &mut errors);
    }
    let over_line = text.lines().count() + 1;
    // overrides are reported on the line after the file
    let mut from_over = BTreeMap::new();
    let mut over_errors = Vec::new();
    tokens_from_text(&overrides.join(" "), &mut from_over, &mut over_errors);
    for (k, mut e) in from_over {
        e.line = over_line;
        entries.insert(k, e);
    }
    errors.extend(over_errors.into_iter().map(|e| match e {
        Error::Config { key, reason, .. } => Error::Config { line: over_line, key, reason },
        other => other,
    }));
    for key in entries.keys() {
        if !KEYS.contains(&key.as_str()) {
            errors.push(config_error(entries[key].line, key, "unknown key"));
        }
    }
    let mut cfg = JobConfig::default();

    let push = |r: Result<()>, errors: &mut Vec<Error>| {
        if let Err(e) = r {
            errors.push(e);
        }
    };

    let rank = entries.get("rank").map(|e| parse_usize(e, "rank"));
    let d = entries.get("d").map(|e| parse_usize(e, "d"));
    let rank = match rank {
        Some(Err(e)) => {
            errors.push(e);
            None
        }
        Some(Ok(r)) => Some((r, entries["rank"].line)),
        None => None,
    };
    let d = match d {
        Some(Err(e)) => {
            errors.push(e);
            None
        }
        Some(Ok(v)) => Some(v),
        None => None,
    };
    cfg.d = d;

    if let Some(t) = entries.get("type") {
        let r = (|| -> Result<DatumSpec> {
            let line = t.line;
            let need_rank = || rank.map(|r| r.0).ok_or_else(|| config_error(line, "rank", "required for this type"));
            let epsilon_d = |odd: bool| -> Result<usize> {
                if let Some(d) = d {
                    return Ok(d);
                }
                let (n, l) = rank.ok_or_else(|| config_error(line, "d", "give d or rank"))?;
                match (odd, n % 2) {
                    (true, 1) => Ok((n - 1) / 2),
                    (false, 0) => Ok(n / 2),
                    _ => Err(config_error(l, "rank", format!("{} needs an {} matrix size, got {n}", t.value, if odd { "odd" } else { "even" }))),
                }
            };
            let spec = match t.value.as_str() {
                "gl" => DatumSpec::Gl { d: d.or(rank.map(|r| r.0)).ok_or_else(|| config_error(line, "d", "required for gl"))? },
                "so" => DatumSpec::So { d: epsilon_d(true)? },
                "sp" => DatumSpec::Sp { d: epsilon_d(false)? },
                other => {
                    let ty = FiniteType::parse(other)
                        .ok_or_else(|| config_error(line, "type", format!("unknown type `{other}`")))?;
                    DatumSpec::Abstract { ty, rank: need_rank()? }
                }
            };
            // construct once to apply the rank caps and type checks
            let probe = JobConfig { datum: Some(spec.clone()), ..Default::default() };
            probe.cartan().map_err(|e| {
                let key = if matches!(spec, DatumSpec::Gl { .. } | DatumSpec::So { .. } | DatumSpec::Sp { .. }) && d.is_some() {
                    "d"
                } else {
                    "rank"
                };
                let l = entries.get(key).map_or(line, |e| e.line);
                config_error(l, key, e.to_string())
            })?;
            Ok(spec)
        })();
        match r {
            Ok(s) => cfg.datum = Some(s),
            Err(e) => errors.push(e),
        }
    }
    let epsilon = matches!(cfg.datum, Some(DatumSpec::So { .. } | DatumSpec::Sp { .. }));

    if let Some(e) = entries.get("doubled") {
        match e.value.as_str() {
            "true" | "1" => cfg.doubled = true,
            "false" | "0" => {}
            v => errors.push(config_error(e.line, "doubled", format!("expected true or false, got `{v}`"))),
        }
    }

    let mut raw = Vec::new();
    for key in ["qf", "qg"] {
        if let Some(e) = entries.get(key) {
            match parse_qf(e, key) {
                Ok(q) => raw.push((key, e.line, q)),
                Err(err) => errors.push(err),
            }
        }
    }
    let mu_raw = entries.get("mu").map(|e| (e.line, parse_coords(&e.value)));
    let halves = raw.iter().any(|(_, _, q)| match q {
        RawQf::Ready(QfSpec::Iota(_)) => true,
        RawQf::List(ws) => ws.iter().any(|w| has_half(w)),
        _ => false,
    }) || matches!(&mu_raw, Some((_, Some(c))) if has_half(c));
    if halves {
        cfg.doubled = true;
    }
    if cfg.datum.is_some() && !epsilon {
        if let Some(e) = entries.get("doubled").filter(|_| cfg.doubled) {
            errors.push(config_error(e.line, "doubled", "doubled coordinates need type so or sp"));
        }
        for (key, line, q) in &raw {
            if matches!(q, RawQf::List(ws) if ws.iter().any(|w| has_half(w))) {
                errors.push(config_error(*line, key, "half-integer weights need type so or sp"));
            }
        }
        if let Some((line, Some(c))) = &mu_raw {
            if has_half(c) {
                errors.push(config_error(*line, "mu", "half-integer weights need type so or sp"));
            }
        }
    }
    let scale = if cfg.doubled { 2 } else { 1 };
    let lattice = cfg.cartan().ok().map(|c| c.lattice_rank());

    for (key, line, q) in raw {
        let spec = match q {
            RawQf::Ready(s) => s,
            RawQf::List(ws) => {
                if let Some(n) = lattice {
                    if let Some(w) = ws.iter().find(|w| w.len() != n) {
                        errors.push(config_error(line, key, format!("weight with {} coordinates, expected {n}", w.len())));
                        continue;
                    }
                }
                QfSpec::Explicit(ws.iter().map(|w| to_weight(w, scale)).collect())
            }
        };
        let kind = cfg.datum.as_ref();
        let mismatch = match (&spec, kind) {
            (QfSpec::Box(_), Some(k)) if !matches!(k, DatumSpec::Gl { .. }) => Some("box needs type gl"),
            (QfSpec::Iota(_) | QfSpec::Jmath(_), Some(k)) if !matches!(k, DatumSpec::So { .. } | DatumSpec::Sp { .. }) => {
                Some("iota and jmath need type so or sp")
            }
            _ => None,
        };
        if let Some(m) = mismatch {
            errors.push(config_error(line, key, m));
            continue;
        }
        if key == "qf" {
            cfg.qf = Some(spec);
        } else {
            cfg.qg = Some(spec);
        }
    }

    if let Some(e) = entries.get("q0") {
        let r: Option<Vec<BigRational>> = e.value.split(',').map(parse_rational).collect();
        match r {
            None => errors.push(config_error(e.line, "q0", format!("malformed list `{}`", e.value))),
            Some(vs) if vs.iter().any(Zero::is_zero) => errors.push(config_error(e.line, "q0", "q0 = 0 is singular")),
            Some(vs) => {
                cfg.q0 = vs
                    .into_iter()
                    .map(|v| if v.is_one() { Specialization::Classical } else { Specialization::Value(v) })
                    .collect()
            }
        }
    }

    if let Some(e) = entries.get("box") {
        push(
            parse_usize(e, "box").and_then(|n| {
                if n > MAX_BOX {
                    Err(config_error(e.line, "box", format!("window {n} exceeds the cap of {MAX_BOX}")))
                } else {
                    cfg.window = Some(n);
                    Ok(())
                }
            }),
            &mut errors,
        );
    }

    if let Some((line, coords)) = mu_raw {
        match coords {
            None => errors.push(config_error(line, "mu", "malformed weight")),
            Some(c) => {
                if let Some(n) = lattice.filter(|&n| n != c.len()) {
                    errors.push(config_error(line, "mu", format!("weight with {} coordinates, expected {n}", c.len())));
                } else {
                    cfg.mu = Some(to_weight(&c, scale));
                }
            }
        }
    }

    if errors.is_empty() {
        Ok(cfg)
    } else {
        errors.sort_by_key(|e| match e {
            Error::Config { line, .. } => *line,
            _ => 0,
        });
        Err(errors)
    }
}

pub fn parse_config(text: &str) -> std::result::Result<JobConfig, Vec<Error>> {
    parse_config_with(text, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(errs: &[Error]) -> Vec<(usize, String)> {
        errs.iter()
            .map(|e| match e {
                Error::Config { line, key, .. } => (*line, key.clone()),
                other => panic!("{other}"),
            })
            .collect()
    }

    #[test]
    fn documented_examples() {
        let c = parse_config("type=gl d=2 qf=box:2").unwrap();
        assert_eq!((c.datum, c.qf), (Some(DatumSpec::Gl { d: 2 }), Some(QfSpec::Box(2))));

        let c = parse_config("type=so rank=5 qf=iota:1").unwrap();
        assert_eq!(c.datum, Some(DatumSpec::So { d: 2 }));
        assert!(c.doubled);
        let t = c.table_f().unwrap();
        assert!(t.group().datum().is_doubled());
        // independent lattice check: every representative has odd (half-integer) coordinates
        for o in t.orbits() {
            assert!(o.rep.0.iter().all(|x| x % 2 != 0), "{}", o.rep);
        }

        let e = parse_config("type=A rank=99").unwrap_err();
        assert_eq!(keys(&e), vec![(1, "rank".to_string())]);
        assert!(e[0].to_string().contains("cap"));
    }

    #[test]
    fn collects_every_error() {
        let text = "type=gl d=2\nqf=iota:1 colour=red\nq0=1,x\nbox=99";
        let e = parse_config(text).unwrap_err();
        assert_eq!(
            keys(&e),
            vec![(2, "colour".into()), (2, "qf".into()), (3, "q0".into()), (4, "box".into())]
        );
        assert!(parse_config("type=sp rank=5").is_err());
        assert!(parse_config("type=B rank=2 qf=list:(1,2,3)").is_err());
        assert!(parse_config("type=gl d=2 qf=list:(1/3,0)").is_err());
        assert!(parse_config("type=gl d=2 qf=list:(1/2,0)").is_err());
        assert!(parse_config("q0=0").is_err());
        assert!(parse_config("type=gl d=7").is_err());
    }

    #[test]
    fn lists_comments_json_and_overrides() {
        let c = parse_config("# comment\ntype=B rank=2  qf=list:(0,-1);[-1,0]  # trailing\nq0=1,3,5/2").unwrap();
        assert_eq!(c.qf, Some(QfSpec::Explicit(vec![Weight(vec![0, -1]), Weight(vec![-1, 0])])));
        assert_eq!(c.q0.len(), 3);
        assert_eq!(c.q0[0], Specialization::Classical);

        let c = parse_config("type=so d=2 qf=list:(-1/2,-3/2) mu=(1/2,0)").unwrap();
        assert!(c.doubled);
        assert_eq!((c.qf, c.mu), (Some(QfSpec::Explicit(vec![Weight(vec![-1, -3])])), Some(Weight(vec![1, 0]))));

        let j = "{\n  \"type\": \"gl\",\n  \"d\": 2,\n  \"qf\": \"box:2\",\n  \"q0\": [\"1\", \"5/2\"]\n}";
        let c = parse_config(j).unwrap();
        assert_eq!((c.datum, c.q0.len()), (Some(DatumSpec::Gl { d: 2 }), 2));
        let e = parse_config("{\n \"type\": \"gl\",\n \"shape\": 1\n}").unwrap_err();
        assert_eq!(keys(&e), vec![(2, "d".into()), (3, "shape".into())]);

        let c = parse_config_with("type=gl d=2 qf=box:2", &["qf=box:3".into(), "qg=box:2".into()]).unwrap();
        assert_eq!((c.qf, c.qg), (Some(QfSpec::Box(3)), Some(QfSpec::Box(2))));
    }
}
