use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use devlat::adjust::{monotone_adjustment_with, Strategy};
use devlat::corpus::{self, rng};
use devlat::deviation::{
    check_deviation, deviation_properties, enumerate_deviations, monotone_failure, random_deviation, search_deviation,
    Axiom, DeviationTable, PropertyReport, SearchConstraints,
};
use devlat::io::{from_json, AmalgamJson, DeviationJson, LatticeJson, PosetJson, SetJson, WitnessJson};
use devlat::lattice::{is_completely_normal, lattice_report, prime_ideal_poset};
use devlat::poset::{
    check_strong_amalgam, is_separability_witness, order_from_witness, satisfies_order_bound, witness_from_amalgam,
    witness_from_order, AmalgamViolation, Enumeration, FinitePoset, SeparabilityWitness,
};
use devlat::semilinear::{parse_rational, point_strings, upper_shadow_set, Inclusion, Rational, SetOps};
use devlat::vlat::{
    self, cevian_dev, check_cevian_triple_with, ideal_join, ideal_leq_with, parse_term, IdealOrder, LadderCheck,
    OmegaRegion, ProbeOutcome, VLTerm,
};
use devlat::{Error, FiniteDistributiveLattice, Result};
use serde::Serialize;

use crate::args::*;
use crate::report::{self, Pair};

pub enum Body {
    Json(serde_json::Value),
    Text(String),
}

/// A report and whether the property it checks holds.
pub struct Run {
    pub body: Body,
    pub holds: bool,
}

fn json<T: Serialize>(r: &T, holds: bool) -> Result<Run> {
    let v = serde_json::to_value(r).map_err(|e| Error::Input(format!("serializing the report: {e}")))?;
    Ok(Run { body: Body::Json(v), holds })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_lattice(path: &Path) -> Result<FiniteDistributiveLattice> {
    from_json::<LatticeJson>(&read(path)?)?.to_lattice()
}

fn load_poset(path: &Path) -> Result<FinitePoset> {
    from_json::<PosetJson>(&read(path)?)?.to_poset()
}

fn ids<const K: usize>(p: &FinitePoset, xs: [usize; K]) -> [String; K] {
    xs.map(|x| p.id(x).to_string())
}

fn enumeration(p: &FinitePoset, order: Option<&str>, seed: u64) -> Result<Enumeration> {
    match order {
        Some(text) => Enumeration::parse(p, text),
        None => Ok(corpus::random_enumeration(&mut rng(seed), p.len())),
    }
}

fn listed(p: &FinitePoset, e: &Enumeration) -> Vec<String> {
    e.as_slice().iter().map(|&x| p.id(x).to_string()).collect()
}

fn constraints(c: &Constraints) -> SearchConstraints {
    SearchConstraints { require_monotone: c.monotone, require_cevian: c.cevian }
}

fn properties(l: &FiniteDistributiveLattice, r: &PropertyReport) -> report::Properties {
    let p = l.carrier();
    report::Properties {
        monotone: r.is_monotone(),
        left_isotone_counterexample: r.left_isotone.map(|(a, b, c)| ids(p, [a, b, c])),
        right_antitone_counterexample: r.right_antitone.map(|(a, b, c)| ids(p, [a, b, c])),
        cevian: r.is_cevian(),
        cevian_counterexample: r.cevian.map(|(a, b, c)| ids(p, [a, b, c])),
    }
}

pub fn run(cli: &Cli, cmd: &Command) -> Result<Run> {
    match cmd {
        Command::Lattice(c) => lattice(c),
        Command::Deviation(c) => deviation(cli, c),
        Command::Adjust(a) => adjust(cli, a),
        Command::Poset(c) => poset(cli, c),
        Command::Semilinear(c) => semilinear(cli, c),
        Command::Vlat(c) => vlat(cli, c),
    }
}

fn lattice(cmd: &LatticeCmd) -> Result<Run> {
    match cmd {
        LatticeCmd::Check { lattice } => {
            let l = load_lattice(lattice)?;
            let r = lattice_report(&l);
            let holds = r.distributive && r.zero_distributive && r.completely_normal && r.root_system;
            json(&r, holds)
        }
        LatticeCmd::Dot { lattice, primes } => {
            let l = load_lattice(lattice)?;
            let text = if *primes { prime_ideal_poset(&l).poset.to_dot("primes") } else { l.to_dot("lattice") };
            Ok(Run { body: Body::Text(text), holds: true })
        }
    }
}

fn deviation(cli: &Cli, cmd: &DeviationCmd) -> Result<Run> {
    match cmd {
        DeviationCmd::Check { lattice, table, require } => {
            let l = load_lattice(lattice)?;
            let t = from_json::<DeviationJson>(&read(table)?)?.to_table(&l)?;
            let verdict = check_deviation(&l, &t);
            let props = properties(&l, &deviation_properties(&l, &t));
            let required = constraints(require);
            let holds = verdict.is_ok()
                && (!required.require_monotone || props.monotone)
                && (!required.require_cevian || props.cevian);
            let violation = verdict.err().map(|v| report::AxiomViolation {
                axiom: match v.axiom {
                    Axiom::Cover => "cover",
                    Axiom::Disjoint => "disjoint",
                }
                .into(),
                pair: ids(l.carrier(), [v.pair.0, v.pair.1]),
            });
            let r = report::DeviationCheck { deviation: violation.is_none(), violation, properties: props, required };
            json(&r, holds)
        }
        DeviationCmd::Search { lattice, require, random } => {
            let l = load_lattice(lattice)?;
            let required = constraints(require);
            let found = if *random {
                random_deviation(&l, &mut rng(cli.seed))?
            } else {
                search_deviation(&l, required)?
            };
            let counterexample: Option<Pair> =
                is_completely_normal(&l).err().map(|(a, b)| ids(l.carrier(), [a, b]));
            let r = report::DeviationSearch {
                found: found.is_some(),
                required,
                random: *random,
                table: found.as_ref().map(|t| DeviationJson::from_map(l.carrier(), &l, t)),
                properties: found.as_ref().map(|t| properties(&l, &deviation_properties(&l, t))),
                completely_normal_counterexample: counterexample,
            };
            json(&r, found.is_some())
        }
        DeviationCmd::Enumerate { lattice, limit, require } => {
            let l = load_lattice(lattice)?;
            let required = constraints(require);
            let tables = enumerate_deviations(&l, required, *limit)?;
            let r = report::DeviationList {
                limit: *limit,
                required,
                count: tables.len(),
                tables: tables.iter().map(|t| DeviationJson::from_map(l.carrier(), &l, t)).collect(),
            };
            json(&r, !tables.is_empty() || *limit == 0)
        }
    }
}

fn adjust(cli: &Cli, a: &AdjustArgs) -> Result<Run> {
    let l = load_lattice(&a.lattice)?;
    let m = match &a.domain {
        Some(path) => load_poset(path)?,
        None => l.carrier().clone(),
    };
    let d = from_json::<DeviationJson>(&read(&a.map)?)?.to_map(&m, &l)?;
    let e = enumeration(&m, a.order.as_deref(), cli.seed)?;
    let strategy = match a.strategy {
        SweepArg::Full => Strategy::FullSweep,
        SweepArg::Finitary => Strategy::Finitary,
    };
    let out = monotone_adjustment_with(&m, &l, &d, &e, strategy)?;
    let dp: &DeviationTable = &out.d_prime;
    let pair = |(x, y): (usize, usize)| ids(&m, [x, y]);
    let trace = out
        .trace
        .iter()
        .map(|t| report::TraceStep {
            pair: pair(t.pair),
            meetands: t.meetands.iter().copied().map(pair).collect(),
            joinands: t.joinands.iter().copied().map(pair).collect(),
            meet_part: l.id(t.meet_part).into(),
            join_part: l.id(t.join_part).into(),
            value: l.id(t.value).into(),
        })
        .collect();
    let r = report::Adjustment {
        order: listed(&m, &e),
        strategy: format!("{strategy:?}").to_lowercase(),
        d_prime: DeviationJson::from_map(&m, &l, dp),
        monotone: monotone_failure(&l, &m, dp).is_none(),
        deviation: a.domain.is_none().then(|| check_deviation(&l, dp).is_ok()),
        trace,
    };
    json(&r, true)
}

fn witness_violation(p: &FinitePoset, w: &SeparabilityWitness) -> Option<report::WitnessViolation> {
    use devlat::poset::WitnessViolation as V;
    is_separability_witness(p, w).err().map(|v| {
        let (kind, a, b) = match v {
            V::NotUpperBound { element, member } => ("not_upper_bound", element, member),
            V::NotLowerBound { element, member } => ("not_lower_bound", element, member),
            V::EmptyIntersection { x, y } => ("empty_intersection", x, y),
        };
        report::WitnessViolation { kind: kind.into(), elements: ids(p, [a, b]) }
    })
}

fn amalgam_failure(spec: &devlat::poset::StrongAmalgamSpec, v: &AmalgamViolation) -> report::AmalgamFailure {
    let (m, ix) = (&spec.carrier, &spec.index);
    let el = |xs: &[usize]| xs.iter().map(|&x| m.id(x).to_string()).collect();
    let idx = |ps: &[usize]| ps.iter().map(|&p| ix.id(p).to_string()).collect();
    let (clause, indices, elements, direction) = match v {
        AmalgamViolation::Union { missing } => ("union", vec![], el(missing), None),
        AmalgamViolation::NotNested { p, q, element } => ("not_nested", idx(&[*p, *q]), el(&[*element]), None),
        AmalgamViolation::Shadowing { p, q, x, direction } => {
            ("shadowing", idx(&[*p, *q]), el(&[*x]), Some(format!("{direction:?}").to_lowercase()))
        }
        AmalgamViolation::Interpolation { p, q, x, y } => ("interpolation", idx(&[*p, *q]), el(&[*x, *y]), None),
    };
    report::AmalgamFailure { clause: clause.into(), indices, elements, direction }
}

fn poset(cli: &Cli, cmd: &PosetCmd) -> Result<Run> {
    match cmd {
        PosetCmd::Witness { poset, order, check } => {
            let p = load_poset(poset)?;
            if let Some(path) = check {
                let given = from_json::<WitnessJson>(&read(path)?)?;
                let w = given.to_witness(&p)?;
                let violation = witness_violation(&p, &w);
                let holds = violation.is_none();
                let r = report::WitnessReport {
                    order: None,
                    witness: WitnessJson::from_witness(&p, &w),
                    valid: holds,
                    violation,
                    order_bound: None,
                };
                return json(&r, holds);
            }
            let e = enumeration(&p, order.as_deref(), cli.seed)?;
            let w = witness_from_order(&p, &e)?;
            let violation = witness_violation(&p, &w);
            let bound = satisfies_order_bound(&w, &e).is_ok();
            let holds = violation.is_none() && bound;
            let r = report::WitnessReport {
                order: Some(listed(&p, &e)),
                witness: WitnessJson::from_witness(&p, &w),
                valid: violation.is_none(),
                violation,
                order_bound: Some(bound),
            };
            json(&r, holds)
        }
        PosetCmd::Order { poset, witness } => {
            let p = load_poset(poset)?;
            let w = from_json::<WitnessJson>(&read(witness)?)?.to_witness(&p)?;
            let b = order_from_witness(&p, &w)?;
            let shadows = |sets: &[devlat::ElemSet]| -> BTreeMap<String, Vec<String>> {
                (0..p.len()).map(|x| (p.id(x).to_string(), p.ids_of(&sets[x]))).collect()
            };
            let r = report::BlockOrderReport {
                enumeration: listed(&p, &b.enumeration),
                blocks: b.blocks.iter().map(|blk| blk.iter().map(|&x| p.id(x).to_string()).collect()).collect(),
                upper_shadows: shadows(&b.shadows.upper),
                lower_shadows: shadows(&b.shadows.lower),
            };
            json(&r, true)
        }
        PosetCmd::Amalgam { spec } => {
            let j = from_json::<AmalgamJson>(&read(spec)?)?;
            let s = j.to_spec()?;
            let nu = j.nu(&s)?;
            let nu_ids = (0..s.carrier.len()).map(|x| (s.carrier.id(x).to_string(), s.index.id(nu[x]).to_string())).collect();
            if let Err(v) = check_strong_amalgam(&s) {
                let r = report::AmalgamReport {
                    strong: false,
                    violation: Some(amalgam_failure(&s, &v)),
                    nu: nu_ids,
                    block_orders: BTreeMap::new(),
                    witness: None,
                    witness_valid: None,
                };
                return json(&r, false);
            }
            let mut r = rng(cli.seed);
            let mut block_orders = BTreeMap::new();
            let mut blocks = Vec::new();
            for q in 0..s.index.len() {
                let b = s.block(q);
                let e = corpus::random_enumeration(&mut r, b.poset.len());
                block_orders.insert(
                    s.index.id(q).to_string(),
                    e.as_slice().iter().map(|&x| s.carrier.id(b.members[x]).to_string()).collect(),
                );
                blocks.push(witness_from_order(&b.poset, &e)?);
            }
            let w = witness_from_amalgam(&s, &blocks, &nu)?;
            let valid = is_separability_witness(&s.carrier, &w).is_ok();
            let rep = report::AmalgamReport {
                strong: true,
                violation: None,
                nu: nu_ids,
                block_orders,
                witness: Some(WitnessJson::from_witness(&s.carrier, &w)),
                witness_valid: Some(valid),
            };
            json(&rep, valid)
        }
    }
}

fn parse_vars(text: &str, dim: usize) -> Result<BTreeSet<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let v = s.trim_start_matches('x');
            match v.parse::<usize>() {
                Ok(i) if (1..=dim).contains(&i) => Ok(i - 1),
                _ => Err(Error::Input(format!("`{s}` is not a variable among x1..x{dim}"))),
            }
        })
        .collect()
}

fn semilinear(cli: &Cli, cmd: &SemilinearCmd) -> Result<Run> {
    let ops = SetOps::new(cli.cell_limit);
    match cmd {
        SemilinearCmd::Includes { s, t } => {
            let s = from_json::<SetJson>(&read(s)?)?.to_set()?;
            let t = from_json::<SetJson>(&read(t)?)?.to_set()?;
            if s.dim() != t.dim() {
                return Err(Error::Input(format!("dimension mismatch: {} vs {}", s.dim(), t.dim())));
            }
            let r = match ops.includes(&s, &t)? {
                Inclusion::Holds => report::IncludesReport { holds: true, witness: None },
                Inclusion::Fails(p) => report::IncludesReport { holds: false, witness: Some(point_strings(&p)) },
            };
            let holds = r.holds;
            json(&r, holds)
        }
        SemilinearCmd::Shadow { set, vars, kind } => {
            let u = from_json::<SetJson>(&read(set)?)?.to_set()?;
            let x = parse_vars(vars, u.dim())?;
            let out = match kind {
                ShadowKind::Upper => upper_shadow_set(&u, &x)?,
                ShadowKind::Lower => ops.lower_shadow_set(&u, &x)?,
            };
            let r = report::ShadowReport {
                kind: format!("{kind:?}").to_lowercase(),
                vars: x.iter().map(|i| format!("x{}", i + 1)).collect(),
                set: SetJson::from_set(&out),
            };
            json(&r, true)
        }
    }
}

fn leq_report(lhs: &VLTerm, rhs: &VLTerm, dim: &TermDim, v: IdealOrder) -> report::LeqReport {
    report::LeqReport {
        n: dim.n,
        relative_to_omega: dim.omega,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        holds: v.holds(),
        witness: v.witness().map(point_strings),
    }
}

fn outcome(o: &ProbeOutcome) -> report::Outcome {
    let (status, witness) = match o {
        ProbeOutcome::Holds => ("holds", None),
        ProbeOutcome::Vacuous { witness } => ("vacuous", Some(point_strings(witness))),
        ProbeOutcome::Counterexample { witness } => ("counterexample", Some(point_strings(witness))),
    };
    report::Outcome { status: status.into(), witness }
}

fn ladder(c: &LadderCheck) -> report::LadderReport {
    report::LadderReport {
        lhs: c.lhs.to_string(),
        rhs: c.rhs.to_string(),
        holds: c.decision.holds(),
        decision_witness: c.decision.witness().map(point_strings),
        witness: point_strings(&c.witness),
        lhs_at_witness: c.lhs_at_witness.to_string(),
        rhs_at_witness: c.rhs_at_witness.to_string(),
        witness_verified: c.witness_verified,
    }
}

fn vlat(cli: &Cli, cmd: &VlatCmd) -> Result<Run> {
    let region = |dim: &TermDim| dim.omega.then(|| OmegaRegion::new(dim.n));
    match cmd {
        VlatCmd::Leq { g, h, dim } => {
            let (g, h) = (parse_term(g, dim.n)?, parse_term(h, dim.n)?);
            let omega = region(dim);
            let v = ideal_leq_with(&g, &h, dim.n, omega.as_ref().map(OmegaRegion::set), cli.piece_limit)?;
            let holds = v.holds();
            json(&leq_report(&g, &h, dim, v), holds)
        }
        VlatCmd::Cevian { g, h, k, dim } => {
            let (tg, th, tk) = (parse_term(g, dim.n)?, parse_term(h, dim.n)?, parse_term(k, dim.n)?);
            let omega = region(dim);
            let v = check_cevian_triple_with(&tg, &th, &tk, dim.n, omega.as_ref().map(OmegaRegion::set), cli.piece_limit)?;
            let holds = v.holds();
            let lhs = cevian_dev(&tg, &tk);
            let rhs = ideal_join(&cevian_dev(&tg, &th), &cevian_dev(&th, &tk));
            let r = report::CevianReport {
                g: tg.to_string(),
                h: th.to_string(),
                k: tk.to_string(),
                check: leq_report(&lhs, &rhs, dim, v),
            };
            json(&r, holds)
        }
        VlatCmd::PscomProbe { n, alpha, c, probes, random, depth } => {
            let c: Rational = parse_rational(c)?;
            let terms: Vec<VLTerm> = match probes {
                Some(path) => read(path)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(|l| parse_term(l, *n))
                    .collect::<Result<_>>()?,
                None => {
                    let mut r = rng(cli.seed);
                    (0..*random).map(|_| corpus::random_term(&mut r, *n, *depth)).collect()
                }
            };
            let rep = vlat::pseudocomplement_probe(*n, *alpha, &c, &terms)?;
            let r = report::PscomReport {
                n: rep.n,
                alpha: rep.alpha,
                c: rep.c.to_string(),
                lower: rep.lower.to_string(),
                upper: rep.upper.to_string(),
                disjoint: rep.disjoint,
                entries: rep
                    .entries
                    .iter()
                    .map(|e| report::ProbeEntry {
                        probe: e.probe.to_string(),
                        against_lower: outcome(&e.against_lower),
                        against_upper: outcome(&e.against_upper),
                    })
                    .collect(),
                counterexamples: rep.counterexamples,
            };
            json(&r, rep.counterexamples == 0)
        }
        VlatCmd::NoisoProbe { k, m, n_coeff } => {
            let rep = vlat::noiso_probe(*k, *m, *n_coeff)?;
            let r = report::NoisoReport {
                k: rep.k,
                m: rep.m,
                n: rep.n_coeff,
                antitone: ladder(&rep.antitone),
                isotone: ladder(&rep.isotone),
                reproduced: rep.reproduced,
            };
            json(&r, rep.reproduced)
        }
    }
}
