//! Published reference values, embedded as JSON fixtures, and the checks that
//! recompute them.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::theorem2_ict;
use crate::cotangent::{
    bhat_matrix, half_angle_convert, theorem1_ict, HalfAngleExpr, HalfBasis, SinCosExpr,
};
use crate::error::{Error, Result};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::series::prop4_value;
use crate::verify::Check;

/// One row of ĉt_1 over sa_m or ca_m. Absent indices are exact zeros; a
/// `partial` fixture lists only some coefficients and says nothing about the rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenFixture {
    pub n: u64,
    pub r: u32,
    pub basis: HalfBasis,
    pub coeffs: BTreeMap<u64, String>,
    pub source: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub partial: bool,
}

impl GoldenFixture {
    pub fn to_expr(&self) -> Result<HalfAngleExpr> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&m, s)| Ok((m, parse_rat(s)?)))
            .collect::<Result<BTreeMap<u64, Rat>>>()?;
        Ok(HalfAngleExpr {
            n: self.n,
            r: self.r,
            basis: self.basis,
            coeffs,
        })
    }

    /// Nonzero coefficients of `expr` in fixture form.
    pub fn from_expr(expr: &HalfAngleExpr, source: &str) -> Self {
        GoldenFixture {
            n: expr.n,
            r: expr.r,
            basis: expr.basis,
            coeffs: expr
                .nonzero()
                .iter()
                .map(|(&m, q)| (m, format_rat(q)))
                .collect(),
            source: source.to_string(),
            partial: false,
        }
    }

    pub fn file_name(&self) -> String {
        format!("n{}_r{}.json", self.n, self.r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BhatFixture {
    pub n: u64,
    pub r: u32,
    pub row: u64,
    pub col: u64,
    pub value: String,
    pub decimal: String,
    pub series_limit: u64,
    pub series_value: String,
}

/// i Σ coeff · sin(π · angle).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SineTerm {
    pub angle: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterSumFixture {
    pub n: u64,
    pub r: u32,
    pub terms: Vec<SineTerm>,
}

impl CharacterSumFixture {
    pub fn embed(&self) -> Result<Complex64> {
        let mut im = 0.0;
        for t in &self.terms {
            let a = parse_rat(&t.angle)?.to_f64().unwrap_or(f64::NAN);
            let c = parse_rat(&t.coeff)?.to_f64().unwrap_or(f64::NAN);
            im += c * (std::f64::consts::PI * a).sin();
        }
        Ok(Complex64::new(0.0, im))
    }
}

pub const TABLE_FILES: &[(&str, &str)] = &[
    (
        "n11_r1.json",
        include_str!("../fixtures/tables/n11_r1.json"),
    ),
    (
        "n11_r2.json",
        include_str!("../fixtures/tables/n11_r2.json"),
    ),
    (
        "n11_r3.json",
        include_str!("../fixtures/tables/n11_r3.json"),
    ),
    (
        "n11_r4.json",
        include_str!("../fixtures/tables/n11_r4.json"),
    ),
    (
        "n13_r1.json",
        include_str!("../fixtures/tables/n13_r1.json"),
    ),
    (
        "n13_r2.json",
        include_str!("../fixtures/tables/n13_r2.json"),
    ),
    (
        "n13_r3.json",
        include_str!("../fixtures/tables/n13_r3.json"),
    ),
    (
        "n13_r4.json",
        include_str!("../fixtures/tables/n13_r4.json"),
    ),
    (
        "n14_r1.json",
        include_str!("../fixtures/tables/n14_r1.json"),
    ),
    (
        "n14_r2.json",
        include_str!("../fixtures/tables/n14_r2.json"),
    ),
    (
        "n14_r3.json",
        include_str!("../fixtures/tables/n14_r3.json"),
    ),
    (
        "n14_r4.json",
        include_str!("../fixtures/tables/n14_r4.json"),
    ),
    (
        "n15_r1.json",
        include_str!("../fixtures/tables/n15_r1.json"),
    ),
    (
        "n15_r2.json",
        include_str!("../fixtures/tables/n15_r2.json"),
    ),
    (
        "n15_r3.json",
        include_str!("../fixtures/tables/n15_r3.json"),
    ),
    (
        "n15_r4.json",
        include_str!("../fixtures/tables/n15_r4.json"),
    ),
];

pub const BHAT_FILE: &str = include_str!("../fixtures/bhat_n35_r3.json");
pub const CHARACTER_SUM_FILE: &str = include_str!("../fixtures/character_sum_n15_r3.json");

fn parse<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{name}: {e}")))
}

pub fn table_fixtures() -> Result<Vec<GoldenFixture>> {
    TABLE_FILES
        .iter()
        .map(|(name, text)| parse(name, text))
        .collect()
}

pub fn table_fixture(n: u64, r: u32) -> Result<GoldenFixture> {
    table_fixtures()?
        .into_iter()
        .find(|f| f.n == n && f.r == r)
        .ok_or_else(|| Error::Parse(format!("no fixture for n={n}, r={r}")))
}

pub fn bhat_fixture() -> Result<BhatFixture> {
    parse("bhat_n35_r3.json", BHAT_FILE)
}

pub fn character_sum_fixture() -> Result<CharacterSumFixture> {
    parse("character_sum_n15_r3.json", CHARACTER_SUM_FILE)
}

/// Pretty JSON with a trailing newline, the layout of the fixture files.
pub fn to_fixture_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Compares a computed row against a fixture, both rendered canonically.
pub fn compare_row(fixture: &GoldenFixture, computed: &HalfAngleExpr) -> Result<Check> {
    let want = fixture.to_expr()?;
    let name = format!("table n={} r={}", fixture.n, fixture.r);
    if fixture.partial {
        let got: BTreeMap<u64, Rat> = want
            .coeffs
            .keys()
            .map(|m| (*m, computed.coeffs.get(m).cloned().unwrap_or_default()))
            .collect();
        let got = HalfAngleExpr {
            coeffs: got,
            ..computed.clone()
        };
        let (w, g) = (want.render(), got.render());
        return Ok(Check::new(format!("{name} (partial)"), w == g, g));
    }
    let got = HalfAngleExpr {
        coeffs: computed.nonzero(),
        ..computed.clone()
    };
    let (w, g) = (want.render(), got.render());
    let ok = w == g && want.basis == got.basis;
    let detail = if w == g {
        g
    } else {
        format!("computed {g}, expected {w}")
    };
    Ok(Check::new(name, ok, detail))
}

pub fn check_table(fixture: &GoldenFixture) -> Result<Check> {
    let expr = theorem1_ict(fixture.n, fixture.r)?;
    compare_row(fixture, &half_angle_convert(&expr))
}

/// Exact B̂ entry and its decimal expansion.
pub fn check_bhat_exact(fx: &BhatFixture) -> Result<(Check, Rat)> {
    let bhat = bhat_matrix(fx.n, fx.r)?;
    let got = bhat.get(fx.row as usize - 1, fx.col as usize - 1).clone();
    let want = parse_rat(&fx.value)?;
    let dec: f64 = fx
        .decimal
        .parse()
        .map_err(|_| Error::Parse(fx.decimal.clone()))?;
    let got_f = got.to_f64().unwrap_or(f64::NAN);
    let ok = got == want && (got_f - dec).abs() < 1e-16;
    Ok((
        Check::new(
            format!("Bhat[{},{}] n={} r={}", fx.row, fx.col, fx.n, fx.r),
            ok,
            format!("{got} = {got_f:.19}"),
        ),
        got,
    ))
}

/// Truncated series for B̂_{1,1}: within 5e−13 of the printed partial sum and 2e−11 of the exact value.
pub fn check_bhat_series(fx: &BhatFixture, exact: &Rat) -> Result<Check> {
    let v = prop4_value(fx.n, fx.r, fx.series_limit)?;
    let printed: f64 = fx
        .series_value
        .parse()
        .map_err(|_| Error::Parse(fx.series_value.clone()))?;
    let exact_f = exact.to_f64().unwrap_or(f64::NAN);
    let (d1, d2) = ((v - printed).abs(), (v - exact_f).abs());
    Ok(Check::new(
        format!(
            "Bhat series n={} r={} limit {}",
            fx.n, fx.r, fx.series_limit
        ),
        d1 <= 5e-13 && d2 <= 2e-11,
        format!("{v:.19}, |diff printed| {d1:.2e}, |diff exact| {d2:.2e}"),
    ))
}

/// The character-sum route reproduces the table row and the sine expression.
pub fn check_character_sum(fx: &CharacterSumFixture, row: &GoldenFixture) -> Result<Vec<Check>> {
    let ict = theorem2_ict(fx.n, fx.r)?;
    let expr = half_angle_convert(&SinCosExpr::from_cyc(&ict, fx.r)?);
    let mut row_check = compare_row(row, &expr)?;
    row_check.name = format!("character sum n={} r={} = table row", fx.n, fx.r);
    let got = ict.embed();
    let want = fx.embed()?;
    let d = (got - want).norm();
    Ok(vec![
        row_check,
        Check::new(
            format!("character sum n={} r={} sine form", fx.n, fx.r),
            d <= 1e-12,
            format!("{:.16e}i vs {:.16e}i, |diff| {d:.2e}", got.im, want.im),
        ),
    ])
}

/// Every embedded fixture, recomputed.
pub fn run_golden() -> Result<Vec<Check>> {
    let tables = table_fixtures()?;
    let mut checks: Vec<Check> = tables.par_iter().map(check_table).collect::<Result<_>>()?;
    let bhat = bhat_fixture()?;
    let (exact_check, exact) = check_bhat_exact(&bhat)?;
    checks.push(exact_check);
    checks.push(check_bhat_series(&bhat, &exact)?);
    let cs = character_sum_fixture()?;
    checks.extend(check_character_sum(&cs, &table_fixture(cs.n, cs.r)?)?);
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_files_round_trip_byte_identically() {
        for (name, text) in TABLE_FILES {
            let f: GoldenFixture = serde_json::from_str(text).unwrap();
            assert_eq!(&f.file_name(), name);
            assert_eq!(to_fixture_json(&f), *text, "{name}");
        }
    }

    #[test]
    fn every_fixture_value_is_reduced() {
        for f in table_fixtures().unwrap() {
            for s in f.coeffs.values() {
                assert_eq!(&parse_rat(s).unwrap().to_string(), s);
            }
        }
        let b = bhat_fixture().unwrap();
        assert_eq!(parse_rat(&b.value).unwrap().to_string(), b.value);
    }

    #[test]
    fn renders_like_the_table() {
        let f = table_fixture(11, 1).unwrap();
        assert_eq!(
            f.to_expr().unwrap().render(),
            "-1/11*sa_1 - 1/11*sa_2 - 1/11*sa_4 - 1/11*sa_5"
        );
    }
}
