//! Text and JSON encodings of elements and Newton classes.
//!
//! Elements: `{"t": [ints], "w": [indices]}` where `w` is the reduced word of
//! the finite part in the simple reflections `1..=rank`. Words in `W̃` are
//! comma-separated indices with 0 the affine node. Classes:
//! `{"kappa": [ints], "nu": [[num, den], …]}`, or `kappa=…,nu=…` on the
//! command line.

use serde_json::{json, Value};

use crate::classes::NewtonClass;
use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::{AffineElement, Coweight, Int, QVector, Rational};

pub fn element_to_json(d: &RootDatum, w: &AffineElement) -> Value {
    let word: Vec<usize> = d.reduced_word(&w.u).into_iter().map(|i| i + 1).collect();
    json!({ "t": w.t, "w": word })
}

pub fn element_from_json(d: &RootDatum, v: &Value) -> Result<AffineElement> {
    let bad = |m: &str| Error::Config(format!("element JSON: {m}"));
    let obj = v.as_object().ok_or_else(|| bad("expected an object with keys t and w"))?;
    if let Some(k) = obj.keys().find(|k| *k != "t" && *k != "w") {
        return Err(bad(&format!("unknown key `{k}`")));
    }
    let t: Coweight = serde_json::from_value(obj.get("t").cloned().ok_or_else(|| bad("missing t"))?)
        .map_err(|e| bad(&e.to_string()))?;
    let w: Vec<usize> = serde_json::from_value(obj.get("w").cloned().unwrap_or(json!([])))
        .map_err(|e| bad(&e.to_string()))?;
    element_from_parts(d, t, &w)
}

/// `t^λ s_{i_1} ⋯ s_{i_k}` with finite indices in `1..=rank`.
pub fn element_from_parts(d: &RootDatum, t: Coweight, word: &[usize]) -> Result<AffineElement> {
    if t.len() != d.dim() {
        return Err(Error::Config(format!("translation has {} coordinates, lattice has {}", t.len(), d.dim())));
    }
    let mut finite = Vec::with_capacity(word.len());
    for &i in word {
        if i == 0 || i > d.rank() {
            return Err(Error::Config(format!("finite simple reflection index {i} outside 1..={}", d.rank())));
        }
        finite.push(i - 1);
    }
    Ok(AffineElement::new(t, d.weyl_from_word(&finite)))
}

/// Parses `0,1,0` (or `0 1 0`, or `[0,1,0]`); the empty string is the identity.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| Error::Config(format!("bad word letter `{p}`"))))
        .collect()
}

/// `t^(2,0)·s1s2`, `s0`-free finite words; `e` for the identity.
pub fn element_to_string(d: &RootDatum, w: &AffineElement) -> String {
    let mut parts = Vec::new();
    if w.t.iter().any(|&x| x != 0) {
        let coords: Vec<String> = w.t.iter().map(Int::to_string).collect();
        parts.push(format!("t^({})", coords.join(",")));
    }
    let word = d.reduced_word(&w.u);
    if !word.is_empty() {
        parts.push(word.iter().map(|i| format!("s{}", i + 1)).collect::<String>());
    }
    if parts.is_empty() {
        "e".into()
    } else {
        parts.join("·")
    }
}

pub fn rational_to_json(x: &Rational) -> Value {
    json!([x.numer(), x.denom()])
}

/// A rational scalar as a JSON integer when integral, else `"p/q"`.
pub fn scalar_to_json(x: &Rational) -> Value {
    if x.is_integer() {
        json!(x.to_integer())
    } else {
        json!(rational_to_string(x))
    }
}

/// A count as a JSON integer, or a decimal string past `u64`.
pub fn count_to_json(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| json!(n.to_string()), |m| json!(m))
}

pub fn qvector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn rational_to_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn qvector_to_string(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(rational_to_string).collect();
    format!("({})", parts.join(","))
}

pub fn class_to_json(c: &NewtonClass) -> Value {
    json!({ "kappa": c.kappa, "nu": qvector_to_json(&c.nu) })
}

pub fn class_to_string(c: &NewtonClass) -> String {
    let k: Vec<String> = c.kappa.iter().map(Int::to_string).collect();
    format!("kappa=[{}],nu={}", k.join(","), qvector_to_string(&c.nu))
}

pub fn class_from_json(d: &RootDatum, v: &Value) -> Result<NewtonClass> {
    let bad = |m: &str| Error::Config(format!("class JSON: {m}"));
    let obj = v.as_object().ok_or_else(|| bad("expected an object with keys kappa and nu"))?;
    if let Some(k) = obj.keys().find(|k| *k != "kappa" && *k != "nu") {
        return Err(bad(&format!("unknown key `{k}`")));
    }
    let kappa: Vec<Int> = serde_json::from_value(obj.get("kappa").cloned().unwrap_or(json!([])))
        .map_err(|e| bad(&e.to_string()))?;
    let pairs: Vec<(Int, Int)> = serde_json::from_value(obj.get("nu").cloned().ok_or_else(|| bad("missing nu"))?)
        .map_err(|e| bad(&e.to_string()))?;
    let mut nu = Vec::with_capacity(pairs.len());
    for (n, den) in pairs {
        if den == 0 {
            return Err(bad("zero denominator"));
        }
        nu.push(Rational::new(n, den));
    }
    NewtonClass::new(d, kappa, nu)
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Config(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, den)) => {
            let n: Int = n.trim().parse().map_err(|_| bad())?;
            let den: Int = den.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, den))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Splits at commas that are not inside brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_list(s: &str) -> Vec<&str> {
    let inner = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
    inner.split(',').map(str::trim).filter(|p| !p.is_empty()).collect()
}

/// Parses a rational coweight: a bracketed list, or the scalar `0`.
pub fn parse_qvector(d: &RootDatum, s: &str) -> Result<QVector> {
    let s = s.trim();
    if !s.starts_with(['[', '(']) {
        let x = parse_rational(s)?;
        if x == Rational::from_integer(0) {
            return Ok(vec![x; d.dim()]);
        }
        if d.dim() == 1 {
            return Ok(vec![x]);
        }
        return Err(Error::Config(format!("`{s}` is not a coweight; use a list like [1,0]")));
    }
    let v: QVector = parse_list(s).into_iter().map(parse_rational).collect::<Result<_>>()?;
    if v.len() != d.dim() {
        return Err(Error::Config(format!("coweight has {} coordinates, lattice has {}", v.len(), d.dim())));
    }
    Ok(v)
}

/// Parses `kappa=…,nu=…`. `kappa` may be omitted when `π₁` is trivial and
/// is a scalar when `π₁` is cyclic; `nu=0` is the zero coweight.
pub fn parse_class(d: &RootDatum, s: &str) -> Result<NewtonClass> {
    let mut kappa: Option<Vec<Int>> = None;
    let mut nu: Option<QVector> = None;
    for part in split_top_level(s) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected key=value in class spec, got `{part}`")))?;
        match key.trim() {
            "kappa" => {
                let items = parse_list(value);
                let parsed: Vec<Int> = items
                    .iter()
                    .map(|p| p.parse::<Int>().map_err(|_| Error::Config(format!("bad kappa entry `{p}`"))))
                    .collect::<Result<_>>()?;
                let m = d.pi1().moduli().len();
                kappa = Some(if parsed == [0] && m != 1 { vec![0; m] } else { parsed });
            }
            "nu" => nu = Some(parse_qvector(d, value)?),
            other => return Err(Error::Config(format!("unknown class key `{other}`"))),
        }
    }
    let nu = nu.ok_or_else(|| Error::Config("class spec needs nu=…".into()))?;
    let kappa = kappa.unwrap_or_else(|| vec![0; d.pi1().moduli().len()]);
    NewtonClass::new(d, kappa, nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Isogeny;

    #[test]
    fn element_json_roundtrip() {
        let d = RootDatum::build("A2", Isogeny::SimplyConnected).unwrap();
        let w = d.from_word(&[0, 1, 2, 0]).unwrap();
        let v = element_to_json(&d, &w);
        assert_eq!(element_from_json(&d, &v).unwrap(), w);
        assert!(element_from_json(&d, &json!({"t": [0, 0], "w": [3]})).is_err());
        assert!(element_from_json(&d, &json!({"t": [0, 0], "x": []})).is_err());
    }

    #[test]
    fn words_and_strings() {
        assert_eq!(parse_word("0,1,0").unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("").unwrap(), Vec::<usize>::new());
        assert!(parse_word("0,a").is_err());
        let d = RootDatum::build("A1", Isogeny::SimplyConnected).unwrap();
        let w = d.from_word(&[0, 1, 0]).unwrap();
        assert_eq!(element_to_string(&d, &w), "t^(2)·s1");
        assert_eq!(element_to_string(&d, &d.identity()), "e");
    }

    #[test]
    fn class_parsing() {
        let a1 = RootDatum::build("A1", Isogeny::SimplyConnected).unwrap();
        let c = parse_class(&a1, "kappa=0,nu=0").unwrap();
        assert_eq!(c.kappa, Vec::<Int>::new());
        assert_eq!(c.nu, vec![Rational::from_integer(0)]);
        let c = parse_class(&a1, "nu=[1]").unwrap();
        assert_eq!(c.nu, vec![Rational::from_integer(1)]);
        assert!(parse_class(&a1, "nu=[-1]").is_err());

        let gl2 = RootDatum::build("GL2", Isogeny::Gl).unwrap();
        let c = parse_class(&gl2, "kappa=1,nu=[1/2,1/2]").unwrap();
        assert_eq!(c.kappa, vec![1]);
        assert_eq!(c.nu, vec![Rational::new(1, 2); 2]);
        let back = class_from_json(&gl2, &class_to_json(&c)).unwrap();
        assert_eq!(back, c);
        assert!(parse_class(&gl2, "kappa=1,nu=[1/2,1/2],mu=3").is_err());
    }
}
