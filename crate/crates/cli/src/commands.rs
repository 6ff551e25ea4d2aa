use serde_json::{json, Value};
use sepalg::algebra::{check_calculus, check_preseparative, Axiom, AxiomReport, CALCULUS_SAMPLES};
use sepalg::closure::{check_sep0, ClosureCache, Sep0Report};
use sepalg::dot::{hasse_edges, lattice_dot, specialization_dot};
use sepalg::duality::{functor_f, ko_lattice, natural_isos, roundtrip_coherent, roundtrip_space};
use sepalg::laws::{check_closure_laws, check_set_laws};
use sepalg::representation::{
    canonical_rep, check_operation_bounds, check_derived, check_rep_properties, order_embedding_check, radical_ops,
    spectrum_of, Variant,
};
use sepalg::separation::{check_sep_with_cap, separate, SepReport, Separation, CHECK_SEP_CAP};
use sepalg::spectrum::{check_spectrum_axioms, join_and_stone, specialization_and_extremes, BitopSpace, PointLabel};
use sepalg::{Algebra, Error, OpKind, PointSet, Result};

use crate::report::{names_value, Report, Section};

pub struct Ctx {
    pub alg: Algebra,
    pub file: String,
    pub seed: u64,
    pub cap: Option<usize>,
}

const AXIOMS: [Axiom; 5] =
    [Axiom::TimesCommutative, Axiom::PlusCommutative, Axiom::TimesAssociative, Axiom::PlusAssociative, Axiom::Mixed];

fn names(alg: &Algebra, xs: impl IntoIterator<Item = usize>) -> String {
    xs.into_iter().map(|x| alg.carrier().name(x)).collect::<Vec<_>>().join(", ")
}

fn axiom_section(alg: &Algebra) -> Section {
    let mut s = Section::new("axioms");
    let report = check_preseparative(alg);
    let failed_at = match &report {
        AxiomReport::Pass => None,
        AxiomReport::Fail { axiom, .. } => AXIOMS.iter().position(|a| a == axiom),
    };
    let checked = failed_at.map_or(AXIOMS.len(), |k| k + 1);
    for (i, axiom) in AXIOMS.iter().enumerate().take(checked) {
        match &report {
            AxiomReport::Fail { witness, .. } if failed_at == Some(i) => {
                s.check(axiom.label(), false, Some(format!("witness ({})", names(alg, witness.iter().copied()))));
            }
            _ => {
                s.check(axiom.label(), true, None);
            }
        }
    }
    let rest: Vec<&str> = AXIOMS[checked..].iter().map(|a| a.label()).collect();
    if !rest.is_empty() {
        s.fact("not checked", rest.join("; "), json!(rest));
    }
    s
}

fn sep0_section(alg: &Algebra, cache: &ClosureCache) -> Section {
    let mut s = Section::new("Sep0");
    match check_sep0(cache) {
        Sep0Report::Pass => s.check("carrier preorder is transitive", true, None),
        Sep0Report::Fail { a, b, c } => s.check(
            "carrier preorder is transitive",
            false,
            Some(format!("{0} <= {1} and {1} <= {2} but not {0} <= {2}", n(alg, a), n(alg, b), n(alg, c))),
        ),
    };
    s
}

fn listed(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn n(alg: &Algebra, x: usize) -> &str {
    alg.carrier().name(x)
}

/// Runs the axioms first; commands that need a preseparative algebra stop
/// with the witness when they fail.
fn gate(report: &mut Report, alg: &Algebra) -> bool {
    let s = axiom_section(alg);
    let ok = s.checks.iter().all(|c| c.holds);
    report.push(s);
    ok
}

pub fn check(ctx: &Ctx) -> Result<Report> {
    let alg = &ctx.alg;
    let mut report = Report::new("check", ctx.file.clone(), ctx.seed);
    let mut carrier = Section::new("carrier");
    carrier.number("size", alg.size());
    carrier.flag("single-valued", alg.is_single_valued());
    if let Some((x0, x1)) = alg.carrier().designated() {
        carrier.text("designated", format!("xi0 = {}, xi1 = {}", n(alg, x0), n(alg, x1)));
    }
    report.push(carrier);
    report.push(axiom_section(alg));
    let cache = ClosureCache::new(alg);
    report.push(sep0_section(alg, &cache));

    let mut sep = Section::new("Sep");
    let cap = ctx.cap.unwrap_or(CHECK_SEP_CAP);
    match check_sep_with_cap(alg, cap) {
        Ok(SepReport::Pass) => {
            sep.check("every disjoint filter and ideal extend to a prime pair", true, None);
        }
        Ok(SepReport::Fail { filter, ideal }) => {
            sep.check(
                "every disjoint filter and ideal extend to a prime pair",
                false,
                Some(format!("no prime pair extends filter {} and ideal {}", alg.format_set(filter), alg.format_set(ideal))),
            );
        }
        Err(Error::Capacity { size, cap, .. }) => {
            sep.text("skipped", format!("carrier has {size} elements, cap is {cap}; rerun with --cap to force"));
            report.capacity_skipped();
        }
        Err(e) => return Err(e),
    }
    report.push(sep);

    let calc = check_calculus(alg, ctx.seed, CALCULUS_SAMPLES);
    let mut s = Section::new("residual calculus");
    s.flag("exhaustive", calc.exhaustive);
    s.number("tuples checked", calc.tuples_checked);
    for id in &calc.identities {
        let detail = id.witness.as_ref().map(|w| {
            let sets: Vec<String> = w.iter().map(|&x| alg.format_set(x)).collect();
            format!("witness {}", sets.join(" "))
        });
        s.check(id.name, id.holds, detail);
    }
    report.push(s);

    let mut s = Section::new("set laws");
    s.clauses(&check_set_laws(alg, ctx.seed, CALCULUS_SAMPLES));
    report.push(s);
    let mut s = Section::new("closure laws");
    s.clauses(&check_closure_laws(alg, ctx.seed, CALCULUS_SAMPLES)?);
    report.push(s);
    Ok(report.finish())
}

fn point_names(u: PointSet) -> String {
    let inner: Vec<String> = u.iter().map(|i| format!("p{i}")).collect();
    format!("{{{}}}", inner.join(", "))
}

fn opens_value(u: &[PointSet]) -> Value {
    Value::from(u.iter().map(|s| s.iter().collect::<Vec<usize>>()).collect::<Vec<_>>())
}

fn opens_text(u: &[PointSet]) -> String {
    u.iter().map(|&s| point_names(s)).collect::<Vec<_>>().join(" ")
}

fn points_section(alg: &Algebra, space: &BitopSpace, variant: Variant) -> Section {
    let mut s = Section::new("points");
    s.text("variant", variant.label());
    s.number("count", space.point_count());
    for (i, label) in space.labels().iter().enumerate() {
        match label {
            PointLabel::Ideal(p) => s.set(format!("p{i}"), alg, *p),
            PointLabel::Name(name) => s.text(format!("p{i}"), name.clone()),
        };
    }
    s
}

fn topology_section(space: &BitopSpace) -> Section {
    let mut s = Section::new("topologies");
    for (key, t) in [("T+ opens", space.tplus()), ("T- opens", space.tminus())] {
        s.fact(key, opens_text(t.opens()), opens_value(t.opens()));
    }
    s
}

pub fn default_variant(alg: &Algebra) -> Variant {
    if alg.carrier().designated().is_some() {
        Variant::MultiProper
    } else {
        Variant::MultiAll
    }
}

pub fn spectrum(ctx: &Ctx, variant: Variant) -> Result<Report> {
    let alg = &ctx.alg;
    let mut report = Report::new("spectrum", ctx.file.clone(), ctx.seed);
    if !gate(&mut report, alg) {
        return Ok(report.finish());
    }
    let space = spectrum_of(alg, variant)?;
    report.push(points_section(alg, &space, variant));
    report.push(topology_section(&space));

    let axioms = check_spectrum_axioms(&space);
    let mut s = Section::new("spectrum axioms");
    s.flag("empty", axioms.empty);
    s.fact("L+", opens_text(&axioms.l_plus), opens_value(&axioms.l_plus));
    s.fact("L-", opens_text(&axioms.l_minus), opens_value(&axioms.l_minus));
    s.clauses(&axioms.clauses);
    report.push(s);

    let spec = specialization_and_extremes(&space)?;
    let mut s = Section::new("specialization");
    let edges = hasse_edges(&spec.order);
    let edge_text: Vec<String> = edges.iter().map(|(a, b)| format!("p{a} < p{b}")).collect();
    s.fact("covers", listed(&edge_text), json!(edges));
    s.fact("maximal", point_names(spec.max), json!(spec.max.iter().collect::<Vec<_>>()));
    s.fact("minimal", point_names(spec.min), json!(spec.min.iter().collect::<Vec<_>>()));
    s.clauses(&spec.clauses);
    report.push(s);

    let stone = join_and_stone(&space)?;
    let mut s = Section::new("Stone");
    s.flag("join topology is a Stone space", stone.stone_space);
    s.flag("T+ = T-", stone.stone_spectrum);
    s.flag("both topologies T1", stone.both_t1);
    s.check("Stone spectrum exactly when both topologies are T1", stone.consistent(), None);
    report.push(s);
    Ok(report.finish())
}

pub fn separate_cmd(ctx: &Ctx, filter: &str, ideal: &str) -> Result<Report> {
    let alg = &ctx.alg;
    let mut report = Report::new("separate", ctx.file.clone(), ctx.seed);
    if !gate(&mut report, alg) {
        return Ok(report.finish());
    }
    let cache = ClosureCache::new(alg);
    let (gf, gi) = (alg.carrier().parse_set(filter)?, alg.carrier().parse_set(ideal)?);
    let (f0, i0) = (cache.mu(gf), cache.alpha(gi));
    let mut s = Section::new("input");
    s.set("filter generators", alg, gf).set("ideal generators", alg, gi);
    s.set("F0 = mu(filter generators)", alg, f0).set("I0 = alpha(ideal generators)", alg, i0);
    let disjoint = !f0.intersects(i0);
    s.check("F0 and I0 are disjoint", disjoint, (!disjoint).then(|| format!("both contain {}", alg.format_set(f0 & i0))));
    report.push(s);
    if !disjoint {
        return Ok(report.finish());
    }
    let mut s = Section::new("result");
    match separate(&cache, f0, i0)? {
        Separation::Separated(p) => {
            s.set("F", alg, p.filter).set("I", alg, p.ideal);
            s.check("F and I are a complementary prime pair extending F0 and I0", p.extends(f0, i0), None);
        }
        Separation::Stuck { element, filter, ideal } => {
            s.set("F", alg, filter).set("I", alg, ideal);
            s.check(
                "separation",
                false,
                Some(format!("stuck at {}: neither mu(F+x) nor alpha(I+x) stays disjoint", n(alg, element))),
            );
        }
    }
    report.push(s);
    Ok(report.finish())
}

pub fn dualize(ctx: &Ctx, variant: Variant) -> Result<Report> {
    let alg = &ctx.alg;
    let mut report = Report::new("dualize", ctx.file.clone(), ctx.seed);
    if !gate(&mut report, alg) {
        return Ok(report.finish());
    }
    let space = spectrum_of(alg, variant)?;
    report.push(points_section(alg, &space, variant));
    let coh = functor_f(&space)?;
    let mut s = Section::new("coherent space F(S)");
    s.fact("opens", opens_text(coh.topology().opens()), opens_value(coh.topology().opens()));
    s.clauses(coh.clauses());
    report.push(s);
    let mut s = Section::new("round trips");
    s.check("G(F(S)) = S", roundtrip_space(&space)?, None);
    s.check("F(G(X)) = X", roundtrip_coherent(&coh)?, None);
    report.push(s);
    let ko = ko_lattice(&coh)?;
    let isos = natural_isos(&coh, &ko)?;
    let mut s = Section::new("Stone duality");
    s.number("compact open lattice size", ko.size());
    let psi: Vec<String> = isos.psi.iter().enumerate().map(|(i, q)| format!("p{i} -> q{q}")).collect();
    s.fact("psi", psi.join(", "), json!(isos.psi));
    s.clauses(&isos.clauses);
    report.push(s);
    Ok(report.finish())
}

pub fn represent(ctx: &Ctx, variant: Variant) -> Result<Report> {
    let alg = &ctx.alg;
    let mut report = Report::new("represent", ctx.file.clone(), ctx.seed);
    if !gate(&mut report, alg) {
        return Ok(report.finish());
    }
    let rep = canonical_rep(alg, variant)?;
    report.push(points_section(alg, &rep.spectrum, variant));
    let mut s = Section::new("lattice L");
    s.number("size", rep.lattice.size());
    for (i, &u) in rep.opens.iter().enumerate() {
        s.fact(format!("l{i}"), point_names(u), json!(u.iter().collect::<Vec<_>>()));
    }
    let covers: Vec<String> = rep.lattice.covers().iter().map(|(a, b)| format!("l{a} < l{b}")).collect();
    s.fact("covers", listed(&covers), json!(rep.lattice.covers()));
    report.push(s);
    let mut s = Section::new("phi");
    for (x, &e) in rep.phi.iter().enumerate() {
        s.fact(n(alg, x), format!("l{e} = {}", point_names(rep.opens[e])), json!(e));
    }
    report.push(s);
    let props = check_rep_properties(&rep)?;
    let mut s = Section::new("representation properties");
    s.flag("injective", props.injective);
    let unsplit: Vec<String> = props.unsplit.iter().map(|&(a, b)| format!("({}, {})", n(alg, a), n(alg, b))).collect();
    s.fact("unsplit pairs", listed(&unsplit), json!(props.unsplit));
    s.clauses(&props.clauses);
    report.push(s);
    let ops = check_operation_bounds(&rep);
    let mut s = Section::new("operations inside L");
    s.flag("plus is exact", ops.plus_exact);
    s.flag("times is exact", ops.times_exact);
    s.flag("swapped orientation also holds", ops.swapped_orientation);
    s.clauses(&ops.clauses);
    report.push(s);
    if variant == Variant::MultiProper && check_sep0(&ClosureCache::new(alg)).passed() {
        let mut s = Section::new("order embedding");
        s.clauses(&order_embedding_check(&rep)?);
        report.push(s);
    }
    Ok(report.finish())
}

fn table_section(title: &str, alg: &Algebra, kind: OpKind) -> Section {
    let mut s = Section::new(title);
    let op = alg.op(kind);
    for a in 0..alg.size() {
        for b in 0..alg.size() {
            let v = op.get(a, b);
            s.fact(format!("{} {} {}", n(alg, a), kind.symbol(), n(alg, b)), alg.format_set(v), names_value(alg, v));
        }
    }
    s
}

pub fn radical(ctx: &Ctx) -> Result<Report> {
    let alg = &ctx.alg;
    let mut report = Report::new("radical", ctx.file.clone(), ctx.seed);
    if !gate(&mut report, alg) {
        return Ok(report.finish());
    }
    let sep0 = sep0_section(alg, &ClosureCache::new(alg));
    let separative = sep0.checks.iter().all(|c| c.holds);
    report.push(sep0);
    if !separative {
        return Ok(report.finish());
    }
    let rad = radical_ops(alg)?;
    report.push(table_section("radical times", &rad, OpKind::Times));
    report.push(table_section("radical plus", &rad, OpKind::Plus));
    let mut s = Section::new("radical algebra");
    s.clauses(&check_derived(alg, &rad, true)?);
    report.push(s);
    Ok(report.finish())
}

#[derive(Clone, Copy)]
pub enum DotObject {
    Lattice,
    Spectrum,
}

pub fn dot(ctx: &Ctx, object: DotObject, variant: Variant) -> Result<std::result::Result<String, Report>> {
    let alg = &ctx.alg;
    let mut report = Report::new("dot", ctx.file.clone(), ctx.seed);
    if !gate(&mut report, alg) {
        return Ok(Err(report.finish()));
    }
    Ok(Ok(match object {
        DotObject::Lattice => lattice_dot("L", &canonical_rep(alg, variant)?.lattice),
        DotObject::Spectrum => {
            let space = spectrum_of(alg, variant)?;
            let spec = specialization_and_extremes(&space)?;
            specialization_dot("spectrum", &space, &spec, alg.carrier().names())
        }
    }))
}
