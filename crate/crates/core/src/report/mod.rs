//! Batch verification and machine-readable certificates.

pub mod input;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{
    admissible_pairs, allowed_orders, holomorphic_lefschetz_case_a, holomorphic_lefschetz_case_b,
    isometries_with_trace, lattice_invariants, moduli_dimension, picard_bound_order8_index2,
    topological_lefschetz_count, FixedCurveData, GramLattice, Sign,
};
use crate::biform::{bitwoform_pullback_ratio, index_of, k3_twoform_ratio};
use crate::claims::{ClaimStatus, CLAIMS};
use crate::cover::{
    check_bis_condition, epsilon_fixed_point_free, family, horikawa_support, k3_cover, specialize, BisCondition,
    FamilyKind, SurfaceFamily,
};
use crate::error::Result;
use crate::field::FieldElem;
use crate::linalg;
use crate::maps::{
    check_equation_invariance, compose, epsilon, k3_lift_inversion, k3_lift_rotation, map_order, scale_cover, sigma,
    BirMap, DEFAULT_MAX_ORDER,
};
use crate::moduli::{builtin_actions, moduli_number, ParameterAction};
use crate::poly::vars::{PARAM_A, PARAM_B, PARAM_C, PARAM_D, PARAM_E, PARAM_F, W_LOWER, Y_LOWER, Z_LOWER};
use crate::poly::{MPoly, Monomial, VarTable};
use crate::qaut::{k4_normal_form_check, qaut_fixed_points, qaut_ns_trace, QAut};

use input::Ingested;

pub const ENGINE: &str = "bicanon";
pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Check families used by `verify --check`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Invariance,
    Order,
    Index,
    Cover,
    Moduli,
    Classification,
    Lattice,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub category: Category,
    pub inputs: Value,
    pub result: Status,
    pub value: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Id of the registered claim this record certifies.
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assumption {
    pub id: String,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub engine: String,
    pub version: String,
    pub schema_version: u32,
    pub status: Status,
    pub records: Vec<Record>,
    pub assumptions: Vec<Assumption>,
}

impl Certificate {
    fn new(records: Vec<Record>) -> Self {
        let status = Status::of(records.iter().all(|r| r.result == Status::Pass));
        let assumptions = CLAIMS
            .iter()
            .filter(|c| c.status == ClaimStatus::Assumed)
            .map(|c| Assumption {
                id: c.id.into(),
                statement: c.statement.into(),
            })
            .collect();
        Self {
            engine: ENGINE.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            schema_version: CERTIFICATE_SCHEMA_VERSION,
            status,
            records,
            assumptions,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn record(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    /// Keeps the records matching the filters and recomputes the status.
    pub fn filtered(&self, family: Option<u32>, category: Option<Category>) -> Certificate {
        let records = self
            .records
            .iter()
            .filter(|r| category.is_none_or(|c| r.category == c))
            .filter(|r| family.is_none_or(|k| r.inputs.get("family") == Some(&json!(k))))
            .cloned()
            .collect();
        Certificate::new(records)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }
}

/// The three built-in families and their automorphisms; replaceable for
/// regression runs on edited fixtures.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub families: [SurfaceFamily; 3],
    pub sigmas: [BirMap; 3],
}

impl Fixtures {
    pub fn builtin() -> Self {
        Self {
            families: [1, 2, 3].map(|k| family(k).expect("built-in family")),
            sigmas: [1, 2, 3].map(|k| sigma(k).expect("built-in map")),
        }
    }

    /// Built-in fixtures with families and maps replaced by those of the
    /// same name in `ingested` (`family-k`, `sigmak`).
    pub fn overridden_by(ingested: &Ingested) -> Self {
        let mut fx = Self::builtin();
        for k in 0..3 {
            let fname = format!("family-{}", k + 1);
            if let Some(f) = ingested.families.iter().find(|f| f.family.name() == fname) {
                fx.families[k] = f.family.clone();
            }
            let mname = format!("sigma{}", k + 1);
            if let Some(m) = ingested.maps.iter().find(|m| m.name == mname) {
                fx.sigmas[k] = m.map.clone();
            }
        }
        fx
    }
}

struct Recorder {
    records: Vec<Record>,
    table: VarTable,
}

impl Recorder {
    fn push(
        &mut self,
        id: impl Into<String>,
        category: Category,
        citation: &str,
        inputs: Value,
        outcome: Result<(bool, Value, Option<String>)>,
    ) {
        debug_assert!(
            crate::claims::claim(citation).is_some(),
            "unregistered claim {citation}"
        );
        let (result, value, witness) = match outcome {
            Ok((ok, value, witness)) => (Status::of(ok), value, witness),
            Err(e) => (Status::Fail, Value::Null, Some(e.to_string())),
        };
        self.records.push(Record {
            id: id.into(),
            category,
            inputs,
            result,
            value,
            witness,
            citation: citation.into(),
        });
    }

    fn poly(&self, p: &MPoly) -> String {
        p.display(&self.table).to_string()
    }
}

fn field_value(x: &FieldElem) -> Value {
    json!({ "coords": x.to_string(), "expr": x.to_expr() })
}

fn fixed_points_value(g: &QAut) -> Result<(bool, Value, Option<String>)> {
    let fx = qaut_fixed_points(g)?;
    let trace = qaut_ns_trace(g);
    let points: Option<Vec<String>> = fx
        .points
        .as_ref()
        .map(|ps| ps.iter().map(|(a, b)| format!("({a}, {b})")).collect());
    let ok = fx.count as i64 == topological_lefschetz_count(trace);
    Ok((
        ok,
        json!({ "count": fx.count, "ns_trace": trace, "points": points }),
        None,
    ))
}

/// Runs every built-in check in a fixed order.
pub fn verify_all() -> Certificate {
    verify_fixtures(&Fixtures::builtin())
}

/// [`verify_all`] against the given fixtures.
pub fn verify_fixtures(fx: &Fixtures) -> Certificate {
    let mut r = Recorder {
        records: Vec::new(),
        table: VarTable::standard(),
    };
    let table = VarTable::standard();

    let support = horikawa_support();
    r.push(
        "horikawa-support",
        Category::Cover,
        "horikawa-support",
        json!({}),
        Ok((
            support.len() == 13,
            json!({ "count": support.len(), "pairs": support }),
            None,
        )),
    );

    for (k, fam) in fx.families.iter().enumerate() {
        let k = k + 1;
        let inside = fam.support().is_subset(&support);
        r.push(
            format!("family/{k}"),
            Category::Cover,
            "horikawa-support",
            json!({ "family": k }),
            Ok((
                inside && fam.kind() == FamilyKind::EnriquesHorikawa,
                json!({
                    "parameters": fam.parameters().iter().map(|p| table.name(*p)).collect::<Vec<_>>(),
                    "terms": fam.branch().len(),
                }),
                None,
            )),
        );
    }

    // Equation invariance
    let invariance_claims = [
        "invariance-order4-index2",
        "invariance-order8-index4",
        "invariance-order8-index2",
    ];
    for k in 0..3 {
        let outcome = check_equation_invariance(&fx.families[k], &fx.sigmas[k]).map(|chk| {
            let witness = (!chk.invariant).then(|| r.poly(&chk.witness));
            (chk.invariant, json!(chk.invariant), witness)
        });
        r.push(
            format!("invariance/family-{}/sigma{}", k + 1, k + 1),
            Category::Invariance,
            invariance_claims[k],
            json!({ "family": k + 1, "map": fx.sigmas[k].display(&table).to_string() }),
            outcome,
        );
    }
    let locus = specialization_locus(&fx.families[0], &fx.sigmas[1]);
    r.push(
        "invariance/family-1/sigma2-locus",
        Category::Invariance,
        "specialization-order8-index4",
        json!({ "family": 1, "map": "sigma2" }),
        locus,
    );

    // Orders
    let expected_orders = [4, 8, 8];
    let order_claims = ["order-sigma1", "order-sigma2", "order-sigma3"];
    let mut orders_found = Vec::new();
    for k in 0..3 {
        let outcome = map_order(&fx.sigmas[k], DEFAULT_MAX_ORDER).map(|o| {
            orders_found.push(o);
            (o == Some(expected_orders[k]), json!(o), None)
        });
        r.push(
            format!("order/sigma{}", k + 1),
            Category::Order,
            order_claims[k],
            json!({ "family": k + 1, "max_n": DEFAULT_MAX_ORDER }),
            outcome,
        );
    }
    let square = compose(&fx.sigmas[1], &fx.sigmas[1]).map(|s| {
        let eq = s == fx.sigmas[0];
        (eq, json!(s.display(&table).to_string()), None)
    });
    r.push(
        "composition/sigma2-squared",
        Category::Order,
        "order-sigma2",
        json!({ "family": 2 }),
        square,
    );

    // Bi-canonical eigenvalues
    let expected_ratio = [-FieldElem::one(), -FieldElem::i(), -FieldElem::one()];
    let expected_index = [2, 4, 2];
    let ratio_claims = ["bicanonical-sigma1", "bicanonical-sigma2", "bicanonical-sigma3"];
    let mut ratios = Vec::new();
    let mut indices_found = Vec::new();
    for k in 0..3 {
        let outcome = bitwoform_pullback_ratio(&fx.families[k], &fx.sigmas[k]).and_then(|ratio| {
            let idx = index_of(&ratio)?;
            ratios.push(ratio.value.clone());
            indices_found.push(idx);
            Ok((
                ratio.value == expected_ratio[k] && idx == expected_index[k],
                json!({ "ratio": field_value(&ratio.value), "index": idx, "constant": ratio.constancy_certificate }),
                None,
            ))
        });
        r.push(
            format!("bicanonical/sigma{}", k + 1),
            Category::Index,
            ratio_claims[k],
            json!({ "family": k + 1 }),
            outcome,
        );
    }
    let mult = compose(&fx.sigmas[1], &fx.sigmas[1])
        .and_then(|s| bitwoform_pullback_ratio(&fx.families[1], &s))
        .map(|sq| {
            let r2 = bitwoform_pullback_ratio(&fx.families[1], &fx.sigmas[1]).map(|x| x.value);
            let ok = r2.map(|x| &x * &x == sq.value).unwrap_or(false);
            (
                ok && sq.value == -FieldElem::one(),
                json!({ "ratio_of_square": field_value(&sq.value) }),
                None,
            )
        });
    r.push(
        "bicanonical/multiplicativity",
        Category::Index,
        "bicanonical-sigma2",
        json!({ "family": 2 }),
        mult,
    );

    // Specializations
    let to_two = specialize(
        &fx.families[0],
        &spec_map(&[
            (PARAM_A, "A"),
            (PARAM_B, "B"),
            (PARAM_C, "-i*A"),
            (PARAM_D, "D"),
            (PARAM_E, "-i*D"),
            (PARAM_F, "-i*B"),
        ]),
    )
    .map(|s| {
        (
            s.branch() == fx.families[1].branch(),
            json!("C=-iA, E=-iD, F=-iB"),
            None,
        )
    });
    r.push(
        "specialization/family-2",
        Category::Cover,
        "specialization-order8-index4",
        json!({ "family": 1 }),
        to_two,
    );
    let mn = specialize(
        &fx.families[0],
        &spec_map(&[
            (PARAM_A, "1"),
            (PARAM_B, "-C-1"),
            (PARAM_C, "C"),
            (PARAM_D, "0"),
            (PARAM_E, "0"),
            (PARAM_F, "-C+1"),
        ]),
    )
    .and_then(|s| {
        let inv = check_equation_invariance(&s, &fx.sigmas[0])?;
        Ok((
            inv.invariant && s.parameters() == [PARAM_C],
            json!({ "branch": r.poly(s.branch()), "sigma1_invariant": inv.invariant }),
            None,
        ))
    });
    r.push(
        "specialization/one-parameter",
        Category::Cover,
        "invariance-order4-index2",
        json!({ "family": 1 }),
        mn,
    );

    // K3 covers
    for (k, fam) in fx.families.iter().enumerate() {
        let outcome = k3_cover(fam).map(|g| {
            let bideg = g.bidegree();
            (
                bideg == (4, 4),
                json!({ "bidegree": [bideg.0, bideg.1], "g": r.poly(g.branch()) }),
                None,
            )
        });
        r.push(
            format!("k3-cover/family-{}", k + 1),
            Category::Cover,
            "k3-cover",
            json!({ "family": k + 1 }),
            outcome,
        );
    }
    let bis = [
        (0, BisCondition::Inversion, "bis-inversion"),
        (1, BisCondition::Rotation, "bis-rotation"),
    ];
    for (k, cond, claim) in bis {
        let outcome = k3_cover(&fx.families[k])
            .and_then(|g| check_bis_condition(g.branch(), cond))
            .map(|ok| (ok, json!(ok), None));
        r.push(
            format!("{claim}/family-{}", k + 1),
            Category::Cover,
            claim,
            json!({ "family": k + 1 }),
            outcome,
        );
    }
    for (k, fam) in fx.families.iter().enumerate() {
        let outcome = epsilon_fixed_point_free(fam).map(|e| {
            let corners: Vec<String> = e.corners.iter().map(|c| r.poly(c)).collect();
            (e.fixed_point_free, json!({ "corners": corners }), None)
        });
        r.push(
            format!("epsilon-free/family-{}", k + 1),
            Category::Cover,
            "epsilon-free",
            json!({ "family": k + 1 }),
            outcome,
        );
    }
    let lifts = k3_cover(&fx.families[0]).and_then(|g| {
        let phi = k3_twoform_ratio(g.branch(), &k3_lift_inversion())?;
        let eps_phi = k3_twoform_ratio(g.branch(), &scale_cover(&k3_lift_inversion(), &-FieldElem::one()))?;
        let eps = k3_twoform_ratio(g.branch(), &epsilon())?;
        let ok = index_of(&phi)? == 4
            && index_of(&eps_phi)? == 4
            && eps.value == -FieldElem::one()
            && ratios.first() == Some(&(&phi.value * &phi.value));
        Ok((
            ok,
            json!({
                "phi": field_value(&phi.value),
                "epsilon_phi": field_value(&eps_phi.value),
                "epsilon": field_value(&eps.value),
            }),
            None,
        ))
    });
    r.push(
        "k3-lift/family-1",
        Category::Index,
        "k3-lift-eigenvalue",
        json!({ "family": 1 }),
        lifts,
    );
    let rot = k3_cover(&fx.families[1]).and_then(|g| {
        let rho = k3_twoform_ratio(g.branch(), &k3_lift_rotation())?;
        let idx = index_of(&rho)?;
        Ok((idx == 8, json!({ "phi": field_value(&rho.value), "order": idx }), None))
    });
    r.push(
        "k3-lift/family-2",
        Category::Index,
        "k3-lift-eigenvalue",
        json!({ "family": 2 }),
        rot,
    );

    // Automorphisms of P1 x P1
    let k4 = k4_normal_form_check();
    r.push(
        "klein-four",
        Category::Lattice,
        "klein-four-normal-form",
        json!({}),
        Ok((
            k4.passed(),
            json!({
                "candidates": k4.candidates_searched,
                "square_roots": k4.monomial_square_roots.len(),
                "klein_four": k4.klein_four,
                "no_direct_root": k4.no_direct_root,
            }),
            None,
        )),
    );
    let named = [
        ("iota", QAut::iota()),
        ("inversion", QAut::inversion()),
        ("iota-inversion", QAut::iota().compose(&QAut::inversion())),
        ("rotation-plus", QAut::rotation(1)),
        ("rotation-minus", QAut::rotation(-1)),
    ];
    for (name, g) in named {
        r.push(
            format!("fixed-points/{name}"),
            Category::Lattice,
            "finite-fixed-points",
            json!({}),
            fixed_points_value(&g),
        );
    }

    // Lefschetz
    for (sign, name) in [(Sign::Plus, "plus"), (Sign::Minus, "minus")] {
        let n = holomorphic_lefschetz_case_b(sign).map(|n| (n == 4, json!(n), None));
        r.push(
            format!("lefschetz/points/{name}"),
            Category::Lattice,
            "lefschetz-point-case",
            json!({ "sign": sign }),
            n,
        );
        let cmp = holomorphic_lefschetz_case_a(sign, FixedCurveData::smooth(9));
        r.push(
            format!("lefschetz/curve/{name}"),
            Category::Lattice,
            "lefschetz-curve-case",
            json!({ "sign": sign, "genus": 9, "self_intersection": 16 }),
            Ok((
                !cmp.equal,
                json!({ "lhs": field_value(&cmp.lhs), "rhs": field_value(&cmp.rhs), "equal": cmp.equal }),
                None,
            )),
        );
    }

    // Lattices
    let u2 = GramLattice::hyperbolic(2);
    let (rank, det) = lattice_invariants(&u2);
    r.push(
        "lattice/u2",
        Category::Lattice,
        "u2-trivial-action",
        json!({ "gram": u2.gram() }),
        Ok((rank == 2 && det == -4, json!({ "rank": rank, "det": det as i64 }), None)),
    );
    let iso = isometries_with_trace(&u2, 2, 2).map(|ms| (ms == vec![vec![vec![1, 0], vec![0, 1]]], json!(ms), None));
    r.push(
        "lattice/u2-trace-2",
        Category::Lattice,
        "u2-trivial-action",
        json!({ "trace": 2, "bound": 2 }),
        iso,
    );

    // Moduli
    let expected_moduli = [5, 2, 2];
    for (k, fam) in fx.families.iter().enumerate() {
        let acts = builtin_actions(fam, k + 1);
        let outcome = moduli_number(fam, &acts).map(|m| {
            let names: Vec<&str> = acts.iter().map(|a| a.name.as_str()).collect();
            (m == expected_moduli[k], json!({ "moduli": m, "actions": names }), None)
        });
        r.push(
            format!("moduli-number/family-{}", k + 1),
            Category::Moduli,
            "moduli-numbers",
            json!({ "family": k + 1 }),
            outcome,
        );
    }
    let alpha = crate::moduli::check_parameter_action(&fx.families[2], &ParameterAction::alpha_scaling())
        .map(|c| (c.holds, json!({ "cover_scale_exponent": c.cover_scale_exponent }), None));
    r.push(
        "moduli/alpha-scaling",
        Category::Moduli,
        "alpha-scaling",
        json!({ "family": 3 }),
        alpha,
    );
    for (rank_t, n, expect) in [(12, 4, 5), (12, 8, 2), (6, 4, 2)] {
        let outcome = moduli_dimension(rank_t, n).map(|m| (m == expect, json!(m), None));
        r.push(
            format!("moduli-dimension/{rank_t}-{n}"),
            Category::Moduli,
            "moduli-dimension",
            json!({ "rank_t": rank_t, "n": n }),
            outcome,
        );
    }
    let pb = picard_bound_order8_index2();
    r.push(
        "picard-bound",
        Category::Moduli,
        "picard-bound",
        json!({ "singularities": "4 A3 + 2 A1" }),
        Ok((pb.rho_lower == 16 && pb.rank_t_upper == 6, json!(pb), None)),
    );

    // Classification
    let cls = admissible_pairs();
    let trace: Vec<Value> = cls
        .pruned
        .iter()
        .map(|p| json!({ "pair": [p.order, p.index], "rule": p.rule.id(), "citation": p.rule.citation().id }))
        .collect();
    let expected: std::collections::BTreeSet<(u32, u32)> = [(4, 2), (8, 4), (8, 2)].into();
    r.push(
        "classification/admissible-pairs",
        Category::Classification,
        "admissible-pairs",
        json!({}),
        Ok((
            cls.admissible == expected,
            json!({ "admissible": cls.admissible, "pruned": trace }),
            None,
        )),
    );
    let witnessed: std::collections::BTreeSet<(u32, u32)> = orders_found
        .iter()
        .zip(&indices_found)
        .filter_map(|(o, i)| o.map(|o| (o, *i)))
        .collect();
    r.push(
        "classification/witnesses",
        Category::Classification,
        "admissible-pairs",
        json!({}),
        Ok((witnessed == cls.admissible, json!(witnessed), None)),
    );
    let orders = allowed_orders();
    r.push(
        "classification/allowed-orders",
        Category::Classification,
        "allowed-orders",
        json!({}),
        Ok((orders == [1, 2, 3, 4, 5, 6, 8].into(), json!(orders), None)),
    );

    Certificate::new(r.records)
}

fn spec_map(pairs: &[(crate::poly::Var, &str)]) -> BTreeMap<crate::poly::Var, MPoly> {
    let t = VarTable::standard();
    pairs
        .iter()
        .map(|(v, s)| {
            let p = crate::poly::parse_expr(s, &t)
                .ok()
                .and_then(|r| r.as_polynomial())
                .expect("built-in specialization parses");
            (*v, p)
        })
        .collect()
}

/// σ₂ fails to preserve the full six-parameter family; its invariance
/// witness cuts out exactly the specialization locus.
fn specialization_locus(fam: &SurfaceFamily, s2: &BirMap) -> Result<(bool, Value, Option<String>)> {
    let chk = check_equation_invariance(fam, s2)?;
    let params = [PARAM_A, PARAM_B, PARAM_C, PARAM_D, PARAM_E, PARAM_F];
    let rows: Vec<Vec<FieldElem>> = chk
        .witness
        .collect_in(&[W_LOWER, Y_LOWER, Z_LOWER])
        .values()
        .map(|c| params.iter().map(|&p| c.coeff(&Monomial::var(p))).collect())
        .collect();
    let rank = linalg::rank(&rows);
    let i = FieldElem::i();
    let (o, z) = (FieldElem::one(), FieldElem::zero());
    let locus = [
        [o.clone(), z.clone(), -&i, z.clone(), z.clone(), z.clone()],
        [z.clone(), o.clone(), z.clone(), z.clone(), z.clone(), -&i],
        [z.clone(), z.clone(), z.clone(), o.clone(), -&i, z.clone()],
    ];
    let in_kernel = locus.iter().all(|v| {
        rows.iter().all(|row| {
            row.iter()
                .zip(v)
                .fold(FieldElem::zero(), |acc, (a, b)| &acc + &(a * b))
                .is_zero()
        })
    });
    let ok = !chk.invariant && rank == 3 && in_kernel;
    Ok((
        ok,
        json!({ "invariant": chk.invariant, "constraint_rank": rank, "locus": "C=-iA, E=-iD, F=-iB" }),
        None,
    ))
}

/// Checks every family and map of an input file.
pub fn verify_input(ingested: &Ingested) -> Certificate {
    let mut r = Recorder {
        records: Vec::new(),
        table: ingested.table.clone(),
    };
    for f in &ingested.families {
        let fam = &f.family;
        let name = fam.name().to_string();
        r.push(
            format!("family/{name}"),
            Category::Cover,
            "horikawa-support",
            json!({ "family_name": name }),
            Ok((true, json!({ "terms": fam.branch().len() }), None)),
        );
        if fam.kind() == FamilyKind::EnriquesHorikawa {
            let outcome = epsilon_fixed_point_free(fam).map(|e| {
                let corners: Vec<String> = e.corners.iter().map(|c| r.poly(c)).collect();
                (e.fixed_point_free, json!({ "corners": corners }), None)
            });
            r.push(
                format!("epsilon-free/{name}"),
                Category::Cover,
                "epsilon-free",
                json!({ "family_name": name }),
                outcome,
            );
        }
        if !f.actions.is_empty() {
            let outcome = moduli_number(fam, &f.actions).map(|m| (true, json!({ "moduli": m }), None));
            r.push(
                format!("moduli-number/{name}"),
                Category::Moduli,
                "moduli-numbers",
                json!({ "family_name": name }),
                outcome,
            );
        }
    }
    for m in &ingested.maps {
        let Some(fname) = &m.family else { continue };
        let fam = ingested.find_family(fname).expect("references are checked at ingest");
        let inputs = json!({ "family_name": fname, "map": m.name });
        let inv = check_equation_invariance(&fam, &m.map);
        let invariant = inv.as_ref().map(|c| c.invariant).unwrap_or(false);
        let inv = inv.map(|c| {
            let witness = (!c.invariant).then(|| r.poly(&c.witness));
            (c.invariant, json!(c.invariant), witness)
        });
        r.push(
            format!("invariance/{fname}/{}", m.name),
            Category::Invariance,
            "cover-invariance",
            inputs.clone(),
            inv,
        );
        if !invariant {
            continue;
        }
        let order = map_order(&m.map, DEFAULT_MAX_ORDER).map(|o| (o.is_some(), json!(o), None));
        r.push(
            format!("order/{}", m.name),
            Category::Order,
            "map-order",
            inputs.clone(),
            order,
        );
        let ratio = match fam.kind() {
            FamilyKind::EnriquesHorikawa => bitwoform_pullback_ratio(&fam, &m.map),
            FamilyKind::K3Cover => k3_twoform_ratio(fam.branch(), &m.map),
        }
        .and_then(|ratio| {
            let idx = index_of(&ratio)?;
            Ok((true, json!({ "ratio": field_value(&ratio.value), "index": idx }), None))
        });
        r.push(
            format!("index/{}", m.name),
            Category::Index,
            "form-eigenvalue",
            inputs,
            ratio,
        );
    }
    Certificate::new(r.records)
}
