//! Embedded fixture matrices and the checks that run on them.
//!
//! Fixtures live as JSON under `fixtures/` and are compiled in with
//! `include_str!`. `SHA256SUMS` pins their contents; every loader checks
//! the sums and each declared order before handing out a matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::cyclotomic::{cyclotomic_companion, matrix_order, MatrixOrder, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};
use crate::exactla::json::int_value;
use crate::exactla::unimodular_inverse;
use crate::forms::{congruence, invariant_form_space, is_invariant, param_form};
use crate::simplicity::{is_nondegenerate, verify_witness};
use crate::weyl::{action_table, conjugacy_check};
use crate::{IntMatrix, ParamMatrix};

macro_rules! fixtures {
    ($($path:literal),* $(,)?) => {
        &[$(($path, include_str!(concat!("../fixtures/", $path)))),*]
    };
}

/// `(relative path, contents)` for every embedded fixture.
pub const FIXTURE_FILES: &[(&str, &str)] = fixtures![
    "gl3/A2_1.json",
    "gl3/A2_2.json",
    "gl3/A2_3.json",
    "gl3/A2_4.json",
    "gl3/A2_5.json",
    "gl3/A3_1.json",
    "gl3/A3_2.json",
    "gl3/A4_1.json",
    "gl3/A4_2.json",
    "gl3/A4_3.json",
    "gl3/A4_4.json",
    "gl3/A6_1.json",
    "gl3/A6_2.json",
    "gl3/A6_3.json",
    "gl3/A6_4.json",
    "dim4/A_10.json",
    "dim4/A_12.json",
    "dim4/A_5.json",
    "dim4/A_8.json",
    "dim4/B_5.json",
    "dim4/B_8.json",
    "dim4/C_10.json",
    "dim4/C_12.json",
    "dim4/C_5.json",
    "dim4/C_8.json",
    "dim4/T_10.json",
    "dim4/T_12.json",
    "dim4/T_5.json",
    "dim4/T_8.json",
    "dim4/Theta_5theta.json",
    "dim4/Theta_8theta.json",
    "dim4/Theta_tensor.json",
    "dim4/action_tables.json",
];

const CHECKSUMS: &str = include_str!("../fixtures/SHA256SUMS");

/// Recomputes every fixture digest against `SHA256SUMS`.
pub fn verify_checksums() -> Result<()> {
    let expected: BTreeMap<&str, &str> = CHECKSUMS
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_once("  ")
                .map(|(h, p)| (p.trim(), h.trim()))
                .ok_or_else(|| Error::Fixture(format!("malformed checksum line {l:?}")))
        })
        .collect::<Result<_>>()?;
    if expected.len() != FIXTURE_FILES.len() {
        return Err(Error::Fixture(format!(
            "{} checksums for {} fixtures",
            expected.len(),
            FIXTURE_FILES.len()
        )));
    }
    for (path, body) in FIXTURE_FILES {
        let digest = hex::encode(Sha256::digest(body.as_bytes()));
        match expected.get(path) {
            Some(h) if *h == digest => {}
            Some(_) => return Err(Error::Fixture(format!("checksum mismatch for {path}"))),
            None => return Err(Error::Fixture(format!("no checksum for {path}"))),
        }
    }
    Ok(())
}

fn fixture(path: &str) -> Result<&'static str> {
    FIXTURE_FILES
        .iter()
        .find(|(p, _)| *p == path)
        .map(|(_, body)| *body)
        .ok_or_else(|| Error::Fixture(format!("unknown fixture {path}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogMatrix {
    Integer(IntMatrix),
    Form(ParamMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub aliases: Vec<String>,
    pub matrix: CatalogMatrix,
    pub declared_order: Option<u64>,
    pub citation: String,
}

impl CatalogEntry {
    pub fn integer(&self) -> Result<&IntMatrix> {
        match &self.matrix {
            CatalogMatrix::Integer(m) => Ok(m),
            CatalogMatrix::Form(_) => Err(Error::Fixture(format!("{} is a form", self.name))),
        }
    }

    pub fn form(&self) -> Result<&ParamMatrix> {
        match &self.matrix {
            CatalogMatrix::Form(m) => Ok(m),
            CatalogMatrix::Integer(_) => Err(Error::Fixture(format!(
                "{} is an integer matrix",
                self.name
            ))),
        }
    }
}

#[derive(Deserialize)]
struct EntryRepr {
    name: String,
    #[serde(default)]
    aliases: Vec<String>,
    kind: String,
    declared_order: Option<u64>,
    citation: String,
    matrix: Value,
}

fn parse_entry(path: &str) -> Result<CatalogEntry> {
    let repr: EntryRepr =
        serde_json::from_str(fixture(path)?).map_err(|e| Error::Fixture(format!("{path}: {e}")))?;
    let matrix = match repr.kind.as_str() {
        "integer" => CatalogMatrix::Integer(IntMatrix::from_json_value(&repr.matrix)?),
        "form" => CatalogMatrix::Form(ParamMatrix::from_json_value(&repr.matrix)?),
        other => return Err(Error::Fixture(format!("{path}: unknown kind {other:?}"))),
    };
    if let (Some(order), CatalogMatrix::Integer(m)) = (repr.declared_order, &matrix) {
        let found = matrix_order(m, DEFAULT_ORDER_CAP)?;
        if found != MatrixOrder::Finite(order) {
            return Err(Error::Fixture(format!(
                "{}: declared order {order}, found {found:?}",
                repr.name
            )));
        }
    }
    Ok(CatalogEntry {
        name: repr.name,
        aliases: repr.aliases,
        matrix,
        declared_order: repr.declared_order,
        citation: repr.citation,
    })
}

fn load_dir(prefix: &str) -> Result<Vec<CatalogEntry>> {
    verify_checksums()?;
    FIXTURE_FILES
        .iter()
        .filter(|(p, _)| p.starts_with(prefix) && !p.ends_with("action_tables.json"))
        .map(|(p, _)| parse_entry(p))
        .collect()
}

/// The fifteen generators of finite order in `GL_3(Z)` up to conjugacy, in
/// table order.
pub fn gl3_table() -> Result<Vec<CatalogEntry>> {
    load_dir("gl3/")
}

/// Everything in the four-dimensional fixture set, keyed for direct use.
#[derive(Clone, Debug)]
pub struct FourTorusFixtures {
    pub entries: Vec<CatalogEntry>,
    /// `C_n` for `n = 5, 8, 10, 12`.
    pub companions: BTreeMap<u64, IntMatrix>,
    /// General member of the `C_n`-invariant forms in `theta, mu`.
    pub generic_forms: BTreeMap<u64, ParamMatrix>,
    /// `theta` on `(1,2)` and `(3,4)`.
    pub theta_tensor: ParamMatrix,
    /// `Theta_{n,theta}`, shared between 5/10 and 8/12.
    pub theta_n: BTreeMap<u64, ParamMatrix>,
    pub b: BTreeMap<u64, IntMatrix>,
    pub a: BTreeMap<u64, IntMatrix>,
    /// Expected renderings of the generator images under `A_n`.
    pub expected_tables: BTreeMap<u64, Vec<String>>,
}

pub const FOUR_TORUS_ORDERS: [u64; 4] = [5, 8, 10, 12];

#[derive(Deserialize)]
struct TablesRepr {
    tables: BTreeMap<String, Vec<String>>,
}

pub fn four_torus_fixtures() -> Result<FourTorusFixtures> {
    let entries = load_dir("dim4/")?;
    let lookup = |name: &str| {
        entries
            .iter()
            .find(|e| e.name == name || e.aliases.iter().any(|a| a == name))
            .ok_or_else(|| Error::Fixture(format!("missing fixture {name}")))
    };
    let mut out = FourTorusFixtures {
        entries: entries.clone(),
        companions: BTreeMap::new(),
        generic_forms: BTreeMap::new(),
        theta_tensor: lookup("Theta")?.form()?.clone(),
        theta_n: BTreeMap::new(),
        b: BTreeMap::new(),
        a: BTreeMap::new(),
        expected_tables: BTreeMap::new(),
    };
    for n in FOUR_TORUS_ORDERS {
        out.companions
            .insert(n, lookup(&format!("C_{n}"))?.integer()?.clone());
        out.generic_forms
            .insert(n, lookup(&format!("T_{n}"))?.form()?.clone());
        out.theta_n
            .insert(n, lookup(&format!("Theta_{n}theta"))?.form()?.clone());
        out.b
            .insert(n, lookup(&format!("B_{n}"))?.integer()?.clone());
        out.a
            .insert(n, lookup(&format!("A_{n}"))?.integer()?.clone());
    }
    let tables: TablesRepr = serde_json::from_str(fixture("dim4/action_tables.json")?)
        .map_err(|e| Error::Fixture(format!("action tables: {e}")))?;
    for (k, v) in tables.tables {
        let n: u64 = k
            .parse()
            .map_err(|_| Error::Fixture(format!("bad table key {k:?}")))?;
        out.expected_tables.insert(n, v);
    }
    Ok(out)
}

/// One generator's outcome in the three-torus survey.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyRow {
    pub name: String,
    pub order: u64,
    pub space_dim: usize,
    /// Witness for `s * B_k` with `s` formal, per basis element `B_k`.
    pub basis_witnesses: Vec<Option<Vec<BigInt>>>,
    /// Witness for the general member; killing every basis element, it
    /// works for every real member of the space at once.
    pub generic_witness: Option<Vec<BigInt>>,
    pub admits_nondegenerate: bool,
}

fn witness_json(w: &Option<Vec<BigInt>>) -> Value {
    match w {
        Some(v) => Value::Array(v.iter().map(int_value).collect()),
        None => Value::Null,
    }
}

impl SurveyRow {
    pub fn to_json_value(&self) -> Value {
        serde_json::json!({
            "name": self.name,
            "order": self.order,
            "space_dim": self.space_dim,
            "basis_witnesses": self.basis_witnesses.iter().map(witness_json).collect::<Vec<_>>(),
            "generic_witness": witness_json(&self.generic_witness),
            "admits_nondegenerate": self.admits_nondegenerate,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyReport {
    pub rows: Vec<SurveyRow>,
    /// Names whose invariant space has a nondegenerate member.
    pub nondegenerate_admitting: Vec<String>,
    /// True iff that list is exactly the flip `-I_3`.
    pub flip_only: bool,
}

impl SurveyReport {
    pub fn to_json_value(&self) -> Value {
        serde_json::json!({
            "rows": self.rows.iter().map(SurveyRow::to_json_value).collect::<Vec<_>>(),
            "nondegenerate_admitting": self.nondegenerate_admitting,
            "flip_only": self.flip_only,
        })
    }
}

pub fn gl3_survey() -> Result<SurveyReport> {
    let mut rows = Vec::new();
    for entry in gl3_table()? {
        let a = entry.integer()?;
        let space = invariant_form_space(a)?;
        let basis_witnesses = space
            .basis
            .iter()
            .map(|b| Ok(is_nondegenerate(&param_form("s", b))?.witness))
            .collect::<Result<Vec<_>>>()?;
        let generic = space.general_member();
        let verdict = is_nondegenerate(&generic)?;
        if let Some(w) = &verdict.witness {
            if !verify_witness(&generic, w)? {
                return Err(Error::CrossCheck(format!("{}: witness fails", entry.name)));
            }
        }
        rows.push(SurveyRow {
            name: entry.name.clone(),
            order: entry.declared_order.unwrap_or_default(),
            space_dim: space.basis.len(),
            basis_witnesses,
            admits_nondegenerate: verdict.nondegenerate,
            generic_witness: verdict.witness,
        });
    }
    let nondegenerate_admitting: Vec<String> = rows
        .iter()
        .filter(|r| r.admits_nondegenerate)
        .map(|r| r.name.clone())
        .collect();
    let flip_only = nondegenerate_admitting == ["A^2_5"];
    Ok(SurveyReport {
        rows,
        nondegenerate_admitting,
        flip_only,
    })
}

/// Named pass/fail results of the four-torus fixture relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureCheck {
    pub name: String,
    pub passed: bool,
}

fn check(out: &mut Vec<FixtureCheck>, name: String, passed: bool) {
    out.push(FixtureCheck { name, passed });
}

/// Conjugation, invariance and order relations among the 4-torus fixtures.
pub fn verify_four_torus() -> Result<Vec<FixtureCheck>> {
    let fx = four_torus_fixtures()?;
    let mut out = Vec::new();
    for n in FOUR_TORUS_ORDERS {
        let c = &fx.companions[&n];
        let b = &fx.b[&n];
        let a = &fx.a[&n];
        let theta_n = &fx.theta_n[&n];
        check(
            &mut out,
            format!("C_{n} is the companion of Phi_{n}"),
            &cyclotomic_companion(n)? == c,
        );
        check(
            &mut out,
            format!("B_{n}^t Theta_{n}theta B_{n} = Theta"),
            congruence(theta_n, b)? == fx.theta_tensor,
        );
        let b_inv = unimodular_inverse(b)?;
        check(
            &mut out,
            format!("B_{n}^-1 C_{n} B_{n} = A_{n}"),
            &b_inv.try_mul(c)?.try_mul(b)? == a,
        );
        check(
            &mut out,
            format!("A_{n} has order {n}"),
            matrix_order(a, DEFAULT_ORDER_CAP)? == MatrixOrder::Finite(n),
        );
        check(
            &mut out,
            format!("Theta_{n}theta is C_{n}-invariant"),
            is_invariant(c, theta_n)?,
        );
        check(
            &mut out,
            format!("A_{n} preserves Theta"),
            is_invariant(a, &fx.theta_tensor)?,
        );
        let conj = conjugacy_check(&b_inv, theta_n, c)?;
        check(
            &mut out,
            format!("conjugacy by B_{n}^-1 carries C_{n} to A_{n}"),
            conj.passed() && &conj.psi == a && conj.theta == fx.theta_tensor,
        );
        let space = invariant_form_space(c)?;
        check(
            &mut out,
            format!("invariant forms of C_{n} match T_{n}"),
            space.basis.len() == 2 && space.general_member() == fx.generic_forms[&n],
        );
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionTableCheck {
    pub n: u64,
    pub expected: Vec<String>,
    pub computed: Vec<String>,
    pub passed: bool,
}

/// Renders the generator images under each `A_n` on the tensor-square form
/// and compares them with the stored strings.
pub fn verify_action_tables() -> Result<Vec<ActionTableCheck>> {
    let fx = four_torus_fixtures()?;
    FOUR_TORUS_ORDERS
        .iter()
        .map(|&n| {
            let computed: Vec<String> = action_table(&fx.a[&n], &fx.theta_tensor)?
                .iter()
                .map(|w| w.render())
                .collect();
            let expected = fx
                .expected_tables
                .get(&n)
                .cloned()
                .ok_or_else(|| Error::Fixture(format!("no expected table for {n}")))?;
            Ok(ActionTableCheck {
                n,
                passed: computed == expected,
                expected,
                computed,
            })
        })
        .collect()
}
