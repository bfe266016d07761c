//! Acceptance runner: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nestohedra::blowup::{sb_via_blowup_sequence, sb_via_blowups};
use nestohedra::building::{constructions, is_nested, AtomSet, Hypergraph};
use nestohedra::catalog::{
    all_building_sets, b_bot, b_top, graph_building_set, pa_levels, path_edges, simplex_boundary,
};
use nestohedra::complexes::{is_isomorphic, Complex, Face};
use nestohedra::fan::faithfully_realizes;
use nestohedra::flat::{et, et_iter, flat_constructions, to_flat, FlatBuildingSet};
use nestohedra::ground::{GroundSet, SumVec};
use nestohedra::oracle::{ElemId, LevelSpec, Oracle};
use nestohedra::pipeline::{catalog_spec, run, PipelineSpec};

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn face(g: &GroundSet, text: &str) -> Face {
    Face::new(text.split(',').map(|s| g.parse_sum(s.trim()).unwrap()))
}

fn flat(g: &GroundSet, items: &[&str]) -> FlatBuildingSet {
    FlatBuildingSet::new(items.iter().map(|s| g.parse_sum(s).unwrap()))
}

fn xyzu() -> GroundSet {
    GroundSet::new(["x", "y", "z", "u"]).unwrap()
}

fn atoms(g: &GroundSet, sets: &[&str]) -> Hypergraph {
    sets.iter()
        .map(|t| AtomSet::from_indices(t.chars().map(|c| g.index_of(&c.to_string()).unwrap())))
        .collect()
}

/// Canonical renders of brace strings, as a set.
fn canonical(o: &mut Oracle, texts: &[&str]) -> BTreeSet<String> {
    texts
        .iter()
        .map(|s| {
            let inner = &s[1..s.len() - 1];
            let mut items = Vec::new();
            let (mut depth, mut start) = (0, 0);
            for (i, ch) in inner.char_indices() {
                match ch {
                    '{' => depth += 1,
                    '}' => depth -= 1,
                    ',' if depth == 0 => {
                        items.push(o.parse(&inner[start..i]).unwrap());
                        start = i + 1;
                    }
                    _ => {}
                }
            }
            items.push(o.parse(&inner[start..]).unwrap());
            o.render_set(&items)
        })
        .collect()
}

const SIX: [&str; 6] = [
    "{{x},{x,y},{z}}",
    "{{y},{x,y},{z}}",
    "{{x},{x,y},{u}}",
    "{{y},{x,y},{u}}",
    "{{x},{z},{u}}",
    "{{y},{z},{u}}",
];

const EIGHT: [&str; 8] = [
    "{{{x}},{{x},{x,y}},{{z}}}",
    "{{{x,y}},{{x},{x,y}},{{z}}}",
    "{{{x}},{{x},{x,y}},{{u}}}",
    "{{{x,y}},{{x},{x,y}},{{u}}}",
    "{{{y}},{{x,y}},{{z}}}",
    "{{{y}},{{x,y}},{{u}}}",
    "{{{x}},{{z}},{{u}}}",
    "{{{y}},{{z}},{{u}}}",
];

const B1: [&str; 6] = ["{{x}}", "{{y}}", "{{z}}", "{{u}}", "{{x,y}}", "{{x},{x,y}}"];

fn edge_levels(o: &mut Oracle) -> (Complex<ElemId>, LevelSpec, LevelSpec) {
    let g = o.ground().clone();
    let c = o.host(&simplex_boundary(&g).unwrap()).unwrap();
    let b0 = o
        .level_from_atoms(&atoms(&g, &["x", "y", "z", "u", "xy"]))
        .unwrap();
    let mut b1 = LevelSpec::default();
    for t in B1 {
        b1.members.insert(o.parse(t).unwrap());
    }
    (c, b0, b1)
}

fn literal_reproduction(_: &mut Vec<Complex>) -> Outcome {
    let start = Instant::now();
    let mut o = Oracle::new(xyzu()).unwrap();
    let (c, b0, b1) = edge_levels(&mut o);
    let n0 = o.literal_nt(&c, &b0).map_err(|e| e.to_string())?;
    let got0: BTreeSet<String> = o.render_complex(&n0).into_iter().collect();
    ensure(
        got0 == canonical(&mut o, &SIX),
        format!("first level gave {got0:?}"),
    )?;
    let n1 = o.literal_nt(&n0, &b1).map_err(|e| e.to_string())?;
    let got1: BTreeSet<String> = o.render_complex(&n1).into_iter().collect();
    ensure(
        got1 == canonical(&mut o, &EIGHT),
        format!("second level gave {got1:?}"),
    )?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("6 and 8 expected bases in {:?}", start.elapsed()))
}

fn flattened_form(out: &mut Vec<Complex>) -> Outcome {
    let g = xyzu();
    let mut o = Oracle::new(g.clone()).unwrap();
    let (c, b0, b1) = edge_levels(&mut o);
    let d = o.derive_flat_levels(&c, &[b0, b1]);
    ensure(
        d == vec![flat(&g, &["x+y"]), flat(&g, &["2x+y"])],
        "derived levels differ from {x+y}, {2x+y}",
    )?;
    let host = simplex_boundary(&g).unwrap();
    let got = et_iter(&host, &d).map_err(|e| e.to_string())?;
    let want = Complex::from_bases(
        &g,
        [
            "x,2x+y,z",
            "x+y,2x+y,z",
            "x,2x+y,u",
            "x+y,2x+y,u",
            "y,x+y,z",
            "y,x+y,u",
            "x,z,u",
            "y,z,u",
        ]
        .map(|s| face(&g, s)),
    )
    .unwrap();
    ensure(got == want, format!("got {:?}", got.bases()))?;
    out.push(got);
    Ok("8 flattened bases match".into())
}

fn single_member_flat_constructions(_: &mut Vec<Complex>) -> Outcome {
    let g = xyzu();
    let got = flat_constructions(&g, &face(&g, "x,x+y,x+y+z"), &flat(&g, &["2x+y"]))
        .map_err(|e| e.to_string())?;
    let want: BTreeSet<Face> = [face(&g, "x,2x+y,x+y+z"), face(&g, "x+y,2x+y,x+y+z")].into();
    ensure(
        got.iter().cloned().collect::<BTreeSet<_>>() == want && got.len() == 2,
        format!("got {got:?}"),
    )?;
    Ok("two flat constructions".into())
}

const STAGE0: [&str; 8] = [
    "x,x+y,x+y+z",
    "y,x+y,x+y+z",
    "x,z,x+y+z",
    "y,z,x+y+z",
    "x,u,x+y",
    "y,u,x+y",
    "x,z,u",
    "y,z,u",
];

const STAGE1_CELLS: [&str; 14] = [
    "x+y+z,2x+2y+z,3x+2y+z",
    "x+y+z,2x+y+z,3x+2y+z",
    "x+y,2x+y,3x+2y+z",
    "x,2x+y+z,3x+2y+z",
    "x,2x+y,3x+2y+z",
    "y,x+y,2x+2y+z",
    "x,z,2x+y+z",
    "z,x+y+z,2x+y+z",
    "y,z,x+y+z",
    "x,u,2x+y",
    "u,x+y,2x+y",
    "y,u,x+y",
    "x,z,u",
    "y,z,u",
];

const STAGE2_CELLS: [&str; 19] = [
    "x+y+z,3x+3y+2z,6x+5y+3z",
    "2x+2y+z,3x+3y+2z,6x+5y+3z",
    "x+y+z,3x+2y+z,6x+5y+3z",
    "2x+2y+z,3x+2y+z,6x+5y+3z",
    "x+y+z,2x+y+z,3x+2y+z",
    "x+y,2x+y,3x+2y+z",
    "x,2x+y+z,3x+2y+z",
    "x,2x+y,3x+2y+z",
    "y,x+y+z,3x+3y+2z",
    "y,2x+2y+z,3x+3y+2z",
    "y,x+y,2x+2y+z",
    "x,z,2x+y+z",
    "z,x+y+z,2x+y+z",
    "y,z,x+y+z",
    "x,u,2x+y",
    "u,x+y,2x+y",
    "y,u,x+y",
    "x,z,u",
    "y,z,u",
];

fn tetrahedron_chain(out: &mut Vec<Complex>) -> Outcome {
    let start = Instant::now();
    let spec = PipelineSpec::from_json(&catalog_spec("tetra-chain").unwrap())
        .map_err(|e| e.to_string())?;
    let report = run(&spec).map_err(|e| e.to_string())?;
    ensure(
        report.paths_agree(),
        "flat, blowup and oracle paths disagree",
    )?;
    let stages = report.stages();
    let counts: Vec<usize> = stages.iter().map(Complex::num_bases).collect();
    ensure(
        counts == vec![8, 16, 20],
        format!("stage counts {counts:?}"),
    )?;
    let oracle_counts: Vec<usize> = report
        .oracle
        .as_ref()
        .unwrap()
        .iter()
        .map(Complex::num_bases)
        .collect();
    ensure(
        oracle_counts == counts,
        format!("oracle counts {oracle_counts:?}"),
    )?;
    let g = spec.host.ground();
    let col0: BTreeSet<Face> = STAGE0.iter().map(|s| face(g, s)).collect();
    ensure(
        stages[0].bases().iter().cloned().collect::<BTreeSet<_>>() == col0,
        "first column differs",
    )?;
    for (stage, cells) in [(1, &STAGE1_CELLS[..]), (2, &STAGE2_CELLS[..])] {
        for cell in cells {
            ensure(
                stages[stage].bases().contains(&face(g, cell)),
                format!("{{{cell}}} missing from stage {stage}"),
            )?;
        }
    }
    out.extend(stages.iter().cloned());
    within(Duration::from_secs(5), start)?;
    Ok(format!(
        "8/16/20 bases, {} expected cells found, {:?}",
        8 + STAGE1_CELLS.len() + STAGE2_CELLS.len(),
        start.elapsed()
    ))
}

/// Random literal level over `cur`: closed random faces plus singletons.
fn random_literal_level(
    rng: &mut rand_chacha::ChaCha8Rng,
    o: &mut Oracle,
    cur: &Complex<ElemId>,
) -> LevelSpec {
    let seeds = random_faces(rng, cur, 3);
    let faces = close_faces(seeds, cur);
    o.level_from_faces(&faces).unwrap()
}

fn oracle_equivalence(out: &mut Vec<Complex>) -> Outcome {
    let mut rng = rng(0x5eed_0005);
    let mut mismatches = 0;
    let instances = 120;
    let (mut deep, mut flat_members) = (0, 0);
    for i in 0..instances {
        let n = 2 + i % 3;
        let g = ground(n);
        let host = match i % 4 {
            0 => simplex_boundary(&g).unwrap(),
            1 => full_simplex(&g),
            _ => random_atom_complex(&mut rng, &g),
        };
        let mut o = Oracle::new(g.clone()).unwrap();
        let lit_host = o.host(&host).unwrap();
        let b0 = random_building_set(&mut rng, &host);
        let mut levels = vec![o.level_from_atoms(&b0).unwrap()];
        let mut cur = o
            .literal_nt(&lit_host, &levels[0])
            .map_err(|e| e.to_string())?;
        for _ in 0..(i / 3) % 3 {
            let b = random_literal_level(&mut rng, &mut o, &cur);
            cur = o.literal_nt(&cur, &b).map_err(|e| e.to_string())?;
            levels.push(b);
        }
        let literal = o
            .literal_nt_iter(&lit_host, &levels)
            .map_err(|e| e.to_string())?;
        let d = o.derive_flat_levels(&lit_host, &levels);
        let flat = et_iter(&host, &d).map_err(|e| format!("instance {i}: {e}"))?;
        deep += usize::from(levels.len() == 3);
        flat_members += d.iter().map(FlatBuildingSet::len).sum::<usize>();
        if o.flatten_complex(&literal) != flat || literal != cur {
            mismatches += 1;
        }
        out.push(flat);
    }
    ensure(mismatches == 0, format!("{mismatches} mismatches"))?;
    Ok(format!("{instances} random instances ({deep} with 3 levels, {flat_members} derived flat members), 0 mismatches"))
}

fn nestedness_equivalence(_: &mut Vec<Complex>) -> Outcome {
    let mut checked = 0usize;
    for n in 1..=4 {
        let g = ground(n);
        let p = full_simplex(&g);
        let alpha = p.bases()[0].clone();
        for b in all_building_sets(&p).map_err(|e| e.to_string())? {
            let members: Vec<AtomSet> = b.iter().collect();
            let cons = constructions(b.hypergraph()).map_err(|e| e.to_string())?;
            let d = to_flat(&b, &p).map_err(|e| e.to_string())?;
            let flat_cons: Vec<BTreeSet<SumVec>> = flat_constructions(&g, &alpha, &d)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|f| f.into_elements().into_iter().collect())
                .collect();
            ensure(cons.len() == flat_cons.len(), "construction counts differ")?;
            let sums: Vec<SumVec> = members.iter().map(|m| m.to_sumvec(n).unwrap()).collect();
            for mask in 0u64..(1 << members.len()) {
                let picked: Vec<usize> =
                    (0..members.len()).filter(|i| mask >> i & 1 == 1).collect();
                let nset: Vec<AtomSet> = picked.iter().map(|&i| members[i]).collect();
                let by_antichains = is_nested(&nset, &b, &p).map_err(|e| e.to_string())?;
                let by_construction = cons.iter().any(|k| nset.iter().all(|m| k.contains(m)));
                let by_flat = flat_cons
                    .iter()
                    .any(|k| picked.iter().all(|&i| k.contains(&sums[i])));
                ensure(
                    by_antichains == by_construction && by_construction == by_flat,
                    format!(
                        "disagreement on {:?} in {}",
                        nset,
                        b.hypergraph().format(&g)
                    ),
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} subsets checked, 0 mismatches"))
}

fn blowup_paths(out: &mut Vec<Complex>) -> Outcome {
    let start = Instant::now();
    let g = ground(4);
    let c = simplex_boundary(&g).unwrap();
    let all = all_building_sets(&c).map_err(|e| e.to_string())?;
    let brute = brute_building_sets(&c);
    ensure(
        all.iter()
            .map(|b| b.hypergraph().clone())
            .collect::<BTreeSet<_>>()
            == brute,
        "enumeration differs from brute force",
    )?;
    ensure(all.len() == brute.len(), "enumeration has duplicates")?;
    let mut rng = rng(0x5eed_0007);
    let mut orders = 0;
    for b in &all {
        let e = et(&c, &to_flat(b, &c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let s = sb_via_blowups(&c, b).map_err(|e| e.to_string())?;
        ensure(
            s == e,
            format!("canonical order differs on {}", b.hypergraph().format(&g)),
        )?;
        for _ in 0..20 {
            let order = random_application_order(&mut rng, b.hypergraph(), &c)
                .ok_or_else(|| format!("no valid order found for {}", b.hypergraph().format(&g)))?;
            let s = sb_via_blowup_sequence(&c, b, &order).map_err(|e| e.to_string())?;
            ensure(
                s == e,
                format!("order {order:?} differs on {}", b.hypergraph().format(&g)),
            )?;
            orders += 1;
        }
        out.push(e);
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!(
        "{} building sets, {orders} shuffled orders, {:?}",
        all.len(),
        start.elapsed()
    ))
}

/// The `k`-gon on `k` atoms.
fn cycle(k: usize) -> Complex {
    let v = |i: usize| SumVec::unit(k, i % k);
    Complex::from_bases(&ground(k), (0..k).map(|i| Face::new([v(i), v(i + 1)]))).unwrap()
}

fn interval_endpoints(out: &mut Vec<Complex>) -> Outcome {
    let g3 = ground(3);
    let tri = simplex_boundary(&g3).unwrap();
    let bot = nestohedra::building::nested_complex(&tri, &b_bot(&tri).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(bot == tri, "bottom building set changed the complex")?;
    let g4 = ground(4);
    let tet = simplex_boundary(&g4).unwrap();
    let bot4 =
        et(&tet, &to_flat(&b_bot(&tet).unwrap(), &tet).unwrap()).map_err(|e| e.to_string())?;
    ensure(bot4 == tet, "bottom building set changed the tetrahedron")?;

    let hex =
        et(&tri, &to_flat(&b_top(&tri).unwrap(), &tri).unwrap()).map_err(|e| e.to_string())?;
    ensure(
        hex.num_bases() == 6 && hex.vertices().len() == 6,
        format!("top on 3 atoms: {:?}", hex.f_vector()),
    )?;
    ensure(
        is_isomorphic(&hex, &cycle(6)).is_some(),
        "top on 3 atoms is not a hexagon",
    )?;
    let perm =
        et(&tet, &to_flat(&b_top(&tet).unwrap(), &tet).unwrap()).map_err(|e| e.to_string())?;
    ensure(
        perm.f_vector() == vec![14, 36, 24],
        format!("top on 4 atoms: {:?}", perm.f_vector()),
    )?;

    let path = graph_building_set(&tri, &path_edges(3)).map_err(|e| e.to_string())?;
    let pent = et(&tri, &to_flat(&path, &tri).unwrap()).map_err(|e| e.to_string())?;
    ensure(
        pent.f_vector() == vec![5, 5],
        format!("path on 3 atoms: {:?}", pent.f_vector()),
    )?;
    ensure(
        is_isomorphic(&pent, &cycle(5)).is_some(),
        "path on 3 atoms is not a pentagon",
    )?;
    out.extend([bot, bot4, hex, perm, pent]);
    Ok("identity, hexagon, (14,36,24), pentagon".into())
}

fn bracketed_permutations(out: &mut Vec<Complex>) -> Outcome {
    let g = ground(4);
    let c = simplex_boundary(&g).unwrap();
    let (top, d) = pa_levels(&g).map_err(|e| e.to_string())?;
    let levels = vec![to_flat(&top, &c).unwrap(), d.clone()];
    let pa = et_iter(&c, &levels).map_err(|e| e.to_string())?;
    ensure(pa.num_bases() == 120, format!("{} bases", pa.num_bases()))?;
    ensure(
        pa.bases().iter().all(|b| b.len() == 3),
        "a basis is not of size 3",
    )?;
    // Literal cross-check of the count.
    let mut o = Oracle::new(g.clone()).unwrap();
    let host = o.host(&c).unwrap();
    let l0 = o.level_from_atoms(top.hypergraph()).unwrap();
    let n0 = o.literal_nt(&host, &l0).map_err(|e| e.to_string())?;
    let l1 = o.level_from_flat(&n0, &d).map_err(|e| e.to_string())?;
    let n1 = o.literal_nt(&n0, &l1).map_err(|e| e.to_string())?;
    ensure(o.flatten_complex(&n1) == pa, "oracle disagrees")?;
    out.push(pa);
    Ok("120 bases of size 3, oracle agrees".into())
}

#[allow(clippy::ptr_arg)]
fn faithfulness(out: &mut Vec<Complex>) -> Outcome {
    for c in out.iter() {
        let r = faithfully_realizes(c);
        ensure(r.verdict, format!("not faithful: {}", r.describe()))?;
    }
    let g = GroundSet::new(["x", "y"]).unwrap();
    let bad = Complex::from_bases(&g, [face(&g, "x,x+y,2x+y")]).unwrap();
    let r = faithfully_realizes(&bad);
    ensure(
        !r.verdict && r.witness.as_ref().is_some_and(|w| w.is_valid()),
        "counterexample not refuted",
    )?;

    let mut small: Vec<Complex> = out
        .iter()
        .filter(|c| c.vertices().len() <= 8)
        .cloned()
        .collect();
    small.push(bad);
    let mut rng = rng(0x5eed_0010);
    for i in 0..60 {
        small.push(random_vector_complex(&mut rng, &ground(2 + i % 2)));
    }
    let mut unfaithful = 0;
    for c in &small {
        let lp = faithfully_realizes(c);
        if let Some(w) = &lp.witness {
            ensure(w.is_valid(), "invalid witness")?;
        }
        ensure(
            lp.verdict == brute_faithful(c, 12),
            format!("LP and brute force disagree on {:?}", c.bases()),
        )?;
        unfaithful += usize::from(!lp.verdict);
    }
    Ok(format!(
        "{} complexes faithful; LP = brute force on {} small complexes ({unfaithful} not faithful)",
        out.len(),
        small.len()
    ))
}

fn link_identity(_: &mut Vec<Complex>) -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        let g = ground(n);
        let p = full_simplex(&g);
        let boundary = simplex_boundary(&g).unwrap();
        let alpha = AtomSet::from_indices(0..n);
        for b in all_building_sets(&p).map_err(|e| e.to_string())? {
            if !b.contains(alpha) {
                continue;
            }
            let mut o = Oracle::new(g.clone()).unwrap();
            let host = o.host(&p).unwrap();
            let inner = o.host(&boundary).unwrap();
            let level = o.level_from_atoms(b.hypergraph()).unwrap();
            let mut rest = b.hypergraph().clone();
            rest.remove(alpha);
            let rest_level = o.level_from_atoms(&rest).unwrap();
            let whole = o.literal_nt(&host, &level).map_err(|e| e.to_string())?;
            let alpha_id = o
                .level_from_atoms(&Hypergraph::new([alpha]))
                .unwrap()
                .members
                .into_iter()
                .next()
                .unwrap();
            let link = whole
                .link(&Face::new([alpha_id]))
                .map_err(|e| e.to_string())?;
            let smaller = o
                .literal_nt(&inner, &rest_level)
                .map_err(|e| e.to_string())?;
            ensure(
                link == smaller,
                format!("link differs for {}", b.hypergraph().format(&g)),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} building sets"))
}

fn cli_determinism(_: &mut Vec<Complex>) -> Outcome {
    let bin = env!("CARGO_BIN_EXE_nestohedra");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        nestohedra::json::to_pretty(&catalog_spec("tetra-chain").unwrap()),
    )
    .unwrap();
    let run = |extra: &[&str]| -> Result<(Vec<u8>, i32), String> {
        let out = Command::new(bin)
            .arg("run")
            .arg("--input")
            .arg(&spec)
            .args(extra)
            .output()
            .map_err(|e| e.to_string())?;
        Ok((out.stdout, out.status.code().unwrap_or(-1)))
    };
    let (first, code) = run(&[])?;
    ensure(code == 0, format!("exit code {code}"))?;
    for _ in 0..4 {
        ensure(run(&[])?.0 == first, "output changed between runs")?;
    }
    for t in ["1", "4"] {
        ensure(
            run(&["--threads", t])?.0 == first,
            format!("output changed with {t} threads"),
        )?;
    }
    let golden = dir.path().join("golden.json");
    std::fs::write(&golden, &first).unwrap();
    let g = golden.to_str().unwrap();
    ensure(
        run(&["--expect", g])?.1 == 0,
        "--expect rejected identical output",
    )?;
    std::fs::write(&golden, [&first[..], b" "].concat()).unwrap();
    ensure(
        run(&["--expect", g])?.1 == 3,
        "--expect accepted different output",
    )?;
    Ok("7 identical runs, --expect passes".into())
}

type Criterion = fn(&mut Vec<Complex>) -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 12] = [
        (
            "literal oracle on the tetrahedron with one edge level",
            literal_reproduction,
        ),
        (
            "flat path on derived levels gives the 8 flattened bases",
            flattened_form,
        ),
        (
            "flat constructions of {x, x+y, x+y+z} under {2x+y}",
            single_member_flat_constructions,
        ),
        ("three flat levels over the tetrahedron", tetrahedron_chain),
        (
            "literal oracle equals flat engine on random instances",
            oracle_equivalence,
        ),
        (
            "nested, construction and flat membership agree",
            nestedness_equivalence,
        ),
        ("blowup paths equal the flat engine", blowup_paths),
        ("interval endpoints", interval_endpoints),
        (
            "permutohedron-based associahedron on 4 atoms has 120 bases",
            bracketed_permutations,
        ),
        ("faithfulness verdicts", faithfulness),
        ("link identity", link_identity),
        ("CLI determinism", cli_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut produced = Vec::new();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result =
            panic::catch_unwind(AssertUnwindSafe(|| f(&mut produced))).unwrap_or_else(|p| {
                Err(p
                    .downcast_ref::<String>()
                    .cloned()
                    .unwrap_or_else(|| "panicked".into()))
            });
        match result {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
