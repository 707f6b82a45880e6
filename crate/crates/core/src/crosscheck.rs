//! Agreement harness: runs every classifier applicable to an instance plus
//! the brute-force amalgam oracle and checks that they all produce the same
//! partition, with every witness re-verified against its defining equation.

use crate::amalgam::{
    amalgams_isomorphic_oracle, verify_amalgam_witness, Amalgam, AmalgamWitness,
    SlotAutomorphisms,
};
use crate::classifiers::{
    goldschmidt_classes, triangle_equivalence_classes, triangle_graph, xi_inverse, xi_map,
    GoldschmidtInstance, TriangleInstance,
};
use crate::error::Result;
use crate::instance::{Budgets, LoadedInstance};
use crate::pointing::{
    amalgam_from_pointing, classify, pointing_from_amalgam, pointings_isomorphic,
    reference_graph, verify_pointing_witness, ClassificationReport, ClassifyOptions,
    DeciderMode, Pointing, PointingWitness, ReferenceGraph,
};
use crate::rigid::{classify_rigid, is_rigid, Rigidity};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Pairing {
    pub name: String,
    pub status: String,
    pub left: u64,
    pub right: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Pairing {
    fn pass(name: &str, left: u64, right: u64) -> Pairing {
        Pairing {
            name: name.to_string(),
            status: "PASS".into(),
            left,
            right,
            detail: None,
        }
    }

    fn fail(name: &str, left: u64, right: u64, detail: String) -> Pairing {
        Pairing {
            name: name.to_string(),
            status: "FAIL".into(),
            left,
            right,
            detail: Some(detail),
        }
    }

    fn check(name: &str, left: u64, right: u64, detail: impl FnOnce() -> String) -> Pairing {
        if left == right {
            Pairing::pass(name, left, right)
        } else {
            Pairing::fail(name, left, right, detail())
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckOutcome {
    pub pass: bool,
    pub pairings: Vec<Pairing>,
}

impl CrosscheckOutcome {
    fn push(&mut self, p: Pairing) {
        if p.status != "PASS" {
            self.pass = false;
        }
        self.pairings.push(p);
    }
}

fn classify_options(budgets: &Budgets, parallel: bool) -> ClassifyOptions {
    ClassifyOptions {
        decider_mode: DeciderMode::EdgeFirst,
        decider_budget: budgets.decider_budget,
        enumeration_budget: budgets.enumeration_budget,
        parallel,
    }
}

/// All enumerated pointings of a report, each with its class id, flattened
/// and sorted by delta for canonical comparisons.
fn flat_members(report: &ClassificationReport) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    for (id, class) in report.classes.iter().enumerate() {
        for m in &class.members {
            out.push((m.delta().to_vec(), id));
        }
    }
    out.sort();
    out
}

/// Partition as a sorted set of sorted member lists, independent of class ids.
fn partition_sets(members: &[(Vec<usize>, usize)], class_count: usize) -> Vec<Vec<Vec<usize>>> {
    let mut sets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); class_count];
    for (delta, id) in members {
        sets[*id].push(delta.clone());
    }
    for s in sets.iter_mut() {
        s.sort();
    }
    sets.sort();
    sets
}

/// Convert a pointing witness into an amalgam witness: vertex entries index
/// the same full Aut carriers; edge entries move from the relative carrier
/// to the full one.
fn transfer_witness(
    rg: &ReferenceGraph,
    slots: &SlotAutomorphisms,
    w: &PointingWitness,
) -> Option<AmalgamWitness> {
    let mut edge = Vec::with_capacity(w.edge.len());
    for (k, &idx) in w.edge.iter().enumerate() {
        let aut = rg.edge_aut(k).automorphism(idx);
        edge.push(slots.edge_auts[k].index_of(&aut)?);
    }
    Some(AmalgamWitness {
        vertex: w.vertex.clone(),
        edge,
    })
}

/// Oracle partition of a list of amalgams: first-match against the oracle
/// representative of each class, in list order.
fn oracle_partition(
    amalgams: &[Amalgam],
    slots: &SlotAutomorphisms,
    budget: u64,
) -> Result<Vec<usize>> {
    let mut reps: Vec<usize> = Vec::new();
    let mut assignment = vec![usize::MAX; amalgams.len()];
    for i in 0..amalgams.len() {
        let mut found = None;
        for (class_id, &r) in reps.iter().enumerate() {
            if amalgams_isomorphic_oracle(&amalgams[i], &amalgams[r], slots, budget)?.is_some() {
                found = Some(class_id);
                break;
            }
        }
        match found {
            Some(c) => assignment[i] = c,
            None => {
                assignment[i] = reps.len();
                reps.push(i);
            }
        }
    }
    Ok(assignment)
}

/// Cross-check one amalgam type: classify vs oracle (counts, partition,
/// witnesses, roundtrips), rigid agreement, and the triangle classifier when
/// the graph is the triangle.
pub fn crosscheck_type(
    rg: &ReferenceGraph,
    budgets: &Budgets,
    parallel: bool,
) -> Result<CrosscheckOutcome> {
    let mut out = CrosscheckOutcome {
        pass: true,
        pairings: Vec::new(),
    };
    let c = rg.graph_of_groups();
    let opts = classify_options(budgets, parallel);
    let report = classify(rg, &opts, None)?;
    let members = flat_members(&report);

    // build the amalgams corresponding to the enumerated pointings
    let mut amalgams = Vec::with_capacity(members.len());
    let mut pointings = Vec::with_capacity(members.len());
    for (delta, _) in &members {
        let p = Pointing::new(c, delta.clone())?;
        amalgams.push(amalgam_from_pointing(rg, &p)?);
        pointings.push(p);
    }

    // roundtrip: pointing -> amalgam -> pointing is the identity
    let mut roundtrip_bad = 0u64;
    for (p, a) in pointings.iter().zip(amalgams.iter()) {
        if pointing_from_amalgam(rg, a)? != *p {
            roundtrip_bad += 1;
        }
    }
    out.push(Pairing::check(
        "pointing_amalgam_roundtrip_violations",
        roundtrip_bad,
        0,
        || "pointing -> amalgam -> pointing is not the identity".into(),
    ));

    // oracle partition of the same amalgams
    let slots = SlotAutomorphisms::compute(rg.amalgam_type().reference(), budgets.cap)?;
    let oracle_assignment = oracle_partition(&amalgams, &slots, budgets.oracle_budget)?;
    let oracle_count = oracle_assignment.iter().max().map_or(0, |m| m + 1);

    out.push(Pairing::check(
        "classify_vs_oracle_counts",
        report.class_count() as u64,
        oracle_count as u64,
        || "class counts differ".into(),
    ));

    let classify_sets = partition_sets(&members, report.class_count());
    let oracle_members: Vec<(Vec<usize>, usize)> = members
        .iter()
        .enumerate()
        .map(|(i, (delta, _))| (delta.clone(), oracle_assignment[i]))
        .collect();
    let oracle_sets = partition_sets(&oracle_members, oracle_count);
    let partitions_equal = classify_sets == oracle_sets;
    out.push(if partitions_equal {
        Pairing::pass("classify_vs_oracle_partition", members.len() as u64, members.len() as u64)
    } else {
        let first = classify_sets
            .iter()
            .zip(oracle_sets.iter())
            .find(|(a, b)| a != b);
        Pairing::fail(
            "classify_vs_oracle_partition",
            classify_sets.len() as u64,
            oracle_sets.len() as u64,
            format!("first disagreeing class pair: {first:?}"),
        )
    });

    // every stored pointing witness re-verifies, and transfers to a valid
    // amalgam isomorphism witness
    let mut witness_checks = 0u64;
    let mut witness_bad = 0u64;
    for class in &report.classes {
        let rep_amalgam = amalgam_from_pointing(rg, &class.representative)?;
        for (m, w) in class.members.iter().zip(class.witnesses.iter()) {
            witness_checks += 1;
            if !verify_pointing_witness(c, m, &class.representative, w) {
                witness_bad += 1;
                continue;
            }
            let member_amalgam = amalgam_from_pointing(rg, m)?;
            match transfer_witness(rg, &slots, w) {
                // witness direction: member -> rep induces chi: A(rep) -> A(member)
                Some(aw) => {
                    if !verify_amalgam_witness(&rep_amalgam, &member_amalgam, &slots, &aw) {
                        witness_bad += 1;
                    }
                }
                None => witness_bad += 1,
            }
        }
    }
    out.push(Pairing::check(
        "witness_violations",
        witness_bad,
        0,
        || format!("{witness_bad} of {witness_checks} witnesses failed re-verification"),
    ));

    // both decider strategies agree on member-vs-representative pairs
    let mut mode_bad = 0u64;
    for class in &report.classes {
        for m in &class.members {
            let a = pointings_isomorphic(
                c,
                m,
                &class.representative,
                DeciderMode::EdgeFirst,
                None,
                budgets.decider_budget,
            )?;
            let b = pointings_isomorphic(
                c,
                m,
                &class.representative,
                DeciderMode::VertexFirst,
                None,
                budgets.decider_budget,
            )?;
            if a.is_some() != b.is_some() {
                mode_bad += 1;
            }
        }
    }
    out.push(Pairing::check(
        "decider_mode_disagreements",
        mode_bad,
        0,
        || "edge-first and vertex-first deciders disagree".into(),
    ));

    // rigid agreement
    match is_rigid(c, budgets.search_budget)? {
        Rigidity::Rigid(_) => {
            let restricted = classify_rigid(rg, &opts, budgets.search_budget)?;
            out.push(Pairing::check(
                "classify_rigid_vs_classify_counts",
                restricted.class_count() as u64,
                report.class_count() as u64,
                || "restricted classification disagrees".into(),
            ));
            let restricted_sets = partition_sets(
                &flat_members(&restricted),
                restricted.class_count(),
            );
            out.push(if restricted_sets == classify_sets {
                Pairing::pass(
                    "classify_rigid_vs_classify_partition",
                    restricted_sets.len() as u64,
                    classify_sets.len() as u64,
                )
            } else {
                Pairing::fail(
                    "classify_rigid_vs_classify_partition",
                    restricted_sets.len() as u64,
                    classify_sets.len() as u64,
                    "restricted partition differs".into(),
                )
            });
        }
        Rigidity::NotRigid { dart } => {
            out.push(Pairing {
                name: "rigidity".into(),
                status: "PASS".into(),
                left: 0,
                right: 0,
                detail: Some(format!("not rigid: failing dart {dart}")),
            });
        }
    }

    // triangle classifier agreement
    if *rg.graph().as_ref() == triangle_graph() {
        let inst = TriangleInstance::from_reference(rg)?;
        let orbits = triangle_equivalence_classes(&inst, budgets.enumeration_budget)?;
        out.push(Pairing::check(
            "triangle_orbits_vs_classify_counts",
            orbits.class_count() as u64,
            report.class_count() as u64,
            || "triangle orbit count disagrees with classify".into(),
        ));

        // Xi and its inverse are mutually inverse on representatives, and
        // orbit membership matches pointing isomorphism against each orbit
        // representative.
        let mut xi_bad = 0u64;
        for rep in &orbits.representatives {
            let p = xi_inverse(c, *rep)?;
            if xi_map(c, &p)? != *rep {
                xi_bad += 1;
            }
        }
        out.push(Pairing::check("xi_roundtrip_violations", xi_bad, 0, || {
            "xi_map ∘ xi_inverse is not the identity on orbit representatives".into()
        }));

        let mut orbit_iso_bad = 0u64;
        let total = orbits.orbit_of.len();
        for i in 0..total {
            let t = decode_triangle_tuple(&inst, i);
            let p = xi_inverse(c, t)?;
            for (orbit_id, rep) in orbits.representatives.iter().enumerate() {
                let q = xi_inverse(c, *rep)?;
                let iso = pointings_isomorphic(
                    c,
                    &p,
                    &q,
                    DeciderMode::EdgeFirst,
                    None,
                    budgets.decider_budget,
                )?;
                if iso.is_some() != (orbits.orbit_of[i] == orbit_id) {
                    orbit_iso_bad += 1;
                }
            }
        }
        out.push(Pairing::check(
            "triangle_orbit_vs_pointing_iso_violations",
            orbit_iso_bad,
            0,
            || "orbit membership disagrees with the pointing decider".into(),
        ));
    }

    Ok(out)
}

fn decode_triangle_tuple(inst: &TriangleInstance, mut i: usize) -> [usize; 3] {
    let n1 = inst.vertex_group(1).order();
    let n2 = inst.vertex_group(2).order();
    let a2 = i % n2;
    i /= n2;
    let a1 = i % n1;
    let a0 = i / n1;
    [a0, a1, a2]
}

/// Goldschmidt agreement: double cosets vs classify (shared encoding) vs
/// oracle, on top of the general type cross-check.
pub fn crosscheck_goldschmidt(
    g: &GoldschmidtInstance,
    budgets: &Budgets,
    parallel: bool,
) -> Result<CrosscheckOutcome> {
    let t = g.as_amalgam_type()?;
    let rg = reference_graph(&t, budgets.cap)?;
    let mut out = crosscheck_type(&rg, budgets, parallel)?;

    let report = goldschmidt_classes(g)?;
    let opts = classify_options(budgets, parallel);
    let classification = classify(&rg, &opts, None)?;
    out.push(Pairing::check(
        "double_cosets_vs_classify_counts",
        report.cosets.len() as u64,
        classification.class_count() as u64,
        || "double coset count disagrees with pointing classification".into(),
    ));

    // the double-coset representatives are pairwise non-isomorphic amalgams
    let slots = SlotAutomorphisms::compute(t.reference(), budgets.cap)?;
    let mut rep_iso_bad = 0u64;
    for i in 0..report.representatives.len() {
        for j in (i + 1)..report.representatives.len() {
            if amalgams_isomorphic_oracle(
                &report.representatives[i],
                &report.representatives[j],
                &slots,
                budgets.oracle_budget,
            )?
            .is_some()
            {
                rep_iso_bad += 1;
            }
        }
    }
    out.push(Pairing::check(
        "double_coset_representatives_distinct_violations",
        rep_iso_bad,
        0,
        || "two double-coset representatives are isomorphic".into(),
    ));

    // every coset representative's amalgam maps into a distinct classify class
    let c = rg.graph_of_groups();
    let mut rep_classes = Vec::new();
    for a in &report.representatives {
        let p = pointing_from_amalgam(&rg, a)?;
        let mut class_id = None;
        for (id, class) in classification.classes.iter().enumerate() {
            if pointings_isomorphic(
                c,
                &p,
                &class.representative,
                DeciderMode::EdgeFirst,
                None,
                budgets.decider_budget,
            )?
            .is_some()
            {
                class_id = Some(id);
                break;
            }
        }
        rep_classes.push(class_id);
    }
    let covered = rep_classes.iter().all(|c| c.is_some());
    let mut distinct = rep_classes.clone();
    distinct.sort();
    distinct.dedup();
    out.push(Pairing::check(
        "double_coset_representatives_cover_classes",
        (covered && distinct.len() == report.representatives.len()) as u64,
        1,
        || "coset representatives do not biject onto pointing classes".into(),
    ));

    Ok(out)
}

/// Run the full cross-check for a loaded instance.
pub fn crosscheck(
    instance: &LoadedInstance,
    budgets: &Budgets,
    parallel: bool,
) -> Result<CrosscheckOutcome> {
    match instance {
        LoadedInstance::Type(t) => {
            let rg = reference_graph(t, budgets.cap)?;
            crosscheck_type(&rg, budgets, parallel)
        }
        LoadedInstance::Goldschmidt(g) => crosscheck_goldschmidt(g, budgets, parallel),
    }
}
