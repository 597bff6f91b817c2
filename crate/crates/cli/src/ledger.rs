//! The claim ledger: every headline constant the library reproduces, checked
//! against its stated value. One serializer, two renderers.

use serde::Serialize;
use serde_json::{json, Value};

use permcover::genera::{
    accola_residual, canonical_tower_report, find_tower_monodromy, quotient_genus, tower_closure,
    TowerCurve,
};
use permcover::homenum::{
    classes_up_to_conjugacy, enumerate_homs, is_surjective, transposition_histogram,
};
use permcover::permgroup::FiniteGroup;
use permcover::prym::{
    abel_prym_collisions, count_galois_covers_via_factorization, infer_eta_location,
    pair_prym_dimension, prym_map_fiber, prym_type, xi_weierstrass_points, EtaLocation,
    PolarizationType, WeierstrassIncidence,
};
use permcover::genera::RamificationProfile;

#[derive(Clone, Debug, Serialize)]
pub struct LedgerEntry {
    pub claim: String,
    pub computed: Value,
    pub expected: Value,
    pub status: String,
}

fn entry(claim: &str, computed: Value, expected: Value) -> LedgerEntry {
    let status = if computed == expected {
        "match"
    } else {
        "mismatch"
    };
    LedgerEntry {
        claim: claim.to_string(),
        computed,
        expected,
        status: status.to_string(),
    }
}

/// Runs every check and returns the full ledger.
pub fn build_ledger() -> Vec<LedgerEntry> {
    let mut entries = Vec::new();

    let s3 = FiniteGroup::symmetric(3).expect("order 6");
    let homs = enumerate_homs(&s3, 2).expect("1296 tuples are under the guard");
    let surjective: Vec<_> = homs
        .into_iter()
        .filter(|h| is_surjective(&s3, h))
        .collect();
    let classes = classes_up_to_conjugacy(&s3, &surjective);
    entries.push(entry(
        "surjective-homs-genus2",
        json!(surjective.len()),
        json!(360),
    ));
    entries.push(entry("covering-classes-genus2", json!(classes.len()), json!(60)));

    let histogram = transposition_histogram(&s3, &surjective).expect("S3 has permutations");
    let census: Vec<usize> = (1..=4).map(|k| histogram[&k]).collect();
    entries.push(entry(
        "transposition-histogram",
        json!(census),
        json!([96, 108, 96, 60]),
    ));

    let report = canonical_tower_report().expect("tower search is nonempty");
    let g = report.genera;
    entries.push(entry(
        "tower-genera",
        json!([g.z, g.y, g.d, g.b, g.a, g.e, g.c, g.x]),
        json!([7, 4, 3, 2, 1, 1, 0, 2]),
    ));
    let tuples = find_tower_monodromy();
    entries.push(entry(
        "tower-central-involutions",
        json!(tuples[0].central_involutions),
        json!(2),
    ));

    let d6 = FiniteGroup::dihedral(6).expect("order 12");
    let closure = tower_closure(&tuples[0]).expect("valid tuple");
    let genus_z = quotient_genus(&closure, &d6.trivial_subgroup()).expect("connected");
    let psi = 1;
    let mut parts = vec![d6.generated_subgroup(&[psi]).expect("valid id")];
    for base in [6usize, 9] {
        let sub = d6.generated_subgroup(&[base]).expect("valid id");
        for k in 0..3 {
            let conjugator = d6.product(std::iter::repeat_n(psi, k));
            parts.push(d6.conjugate_subgroup(&sub, conjugator));
        }
    }
    let part_data: Vec<(usize, usize)> = parts
        .iter()
        .map(|h| (h.order(), quotient_genus(&closure, h).expect("connected")))
        .collect();
    let p0 = quotient_genus(&closure, &d6.full_subgroup()).expect("connected");
    entries.push(entry(
        "accola-dihedral",
        json!(accola_residual(genus_z, 12, p0, &part_data).expect("nonempty parts")),
        json!(0),
    ));
    let klein = TowerCurve::C.subgroup(&d6);
    let klein_parts: Vec<(usize, usize)> = [3usize, 9, 6]
        .iter()
        .map(|&gen| {
            let h = d6.generated_subgroup(&[gen]).expect("valid id");
            (h.order(), quotient_genus(&closure, &h).expect("connected"))
        })
        .collect();
    let pc = quotient_genus(&closure, &klein).expect("connected");
    entries.push(entry(
        "accola-klein",
        json!(accola_residual(genus_z, 4, pc, &klein_parts).expect("nonempty parts")),
        json!(0),
    ));

    let etale = RamificationProfile::etale();
    entries.push(entry(
        "prym-type-etale",
        json!(prym_type(2, &etale).expect("valid profile").entries()),
        json!([3, 3]),
    ));
    let two_simple = RamificationProfile::new(2, 0).expect("even");
    entries.push(entry(
        "prym-type-genus1-simple",
        json!(prym_type(1, &two_simple).expect("valid profile").entries()),
        json!([3]),
    ));
    let one_total = RamificationProfile::new(0, 1).expect("even");
    entries.push(entry(
        "prym-type-genus1-total",
        json!(prym_type(1, &one_total).expect("valid profile").entries()),
        json!([3]),
    ));

    let labels: Vec<String> = (1..=6).map(|i| format!("w{i}")).collect();
    let fiber = prym_map_fiber(&labels).expect("six distinct labels");
    entries.push(entry("prym-fiber-degree", json!(fiber.len()), json!(10)));

    let principal_pair = PolarizationType::new(vec![1, 1]).expect("valid");
    let located = infer_eta_location(&principal_pair).expect("recognized type");
    entries.push(entry(
        "eta-in-prym-g",
        json!(u8::from(located == EtaLocation::InPrymG)),
        json!(1),
    ));

    let factored = count_galois_covers_via_factorization();
    entries.push(entry(
        "etale-double-covers-genus2",
        json!(factored.double_covers),
        json!(15),
    ));
    entries.push(entry(
        "order3-subgroups-of-elliptic-3torsion",
        json!(factored.triple_covers),
        json!(4),
    ));
    entries.push(entry(
        "galois-covers-by-factorization",
        json!(factored.total()),
        json!(60),
    ));
    entries.push(entry(
        "factorization-agrees-with-classes",
        json!(factored.total()),
        json!(classes.len()),
    ));

    let incidence = WeierstrassIncidence::canonical();
    entries.push(entry(
        "xi-weierstrass-pairs",
        json!(xi_weierstrass_points(&incidence).len()),
        json!(6),
    ));
    entries.push(entry(
        "abel-prym-collisions",
        json!(abel_prym_collisions(&incidence).len()),
        json!(4),
    ));
    entries.push(entry(
        "pair-prym-dimension",
        json!(pair_prym_dimension(g.z, g.y, g.d, g.x).expect("nonnegative")),
        json!(2),
    ));

    entries
}

/// Human-readable table derived from the same entries the JSON mode prints.
pub fn render_table(entries: &[LedgerEntry]) -> String {
    let mut rows: Vec<[String; 4]> = vec![[
        "claim".into(),
        "computed".into(),
        "expected".into(),
        "status".into(),
    ]];
    for e in entries {
        rows.push([
            e.claim.clone(),
            e.computed.to_string(),
            e.expected.to_string(),
            e.status.clone(),
        ]);
    }
    let widths: Vec<usize> = (0..4)
        .map(|col| rows.iter().map(|r| r[col].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        for (col, cell) in row.iter().enumerate() {
            out.push_str(&format!("{:width$}  ", cell, width = widths[col]));
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }
    out
}
