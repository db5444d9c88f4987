use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use contalg_core::bits::fmt_set;
use contalg_core::boolean::is_dense_subset;
use contalg_core::dimension::{
    check_lemma_dv_invariance, dim_a, is_dv_dense, lca_dim_a, DimValue, DimensionQuery, LcaWitnesses,
};
use contalg_core::lca::{check_dhlc_morphism, compose_diamond, product_lca, relative_lca, LcaAxiom};
use contalg_core::search::{tabulate, RelationClass};
use contalg_core::topology::{
    dim_cl, is_connected_space, is_pi_semiregular, is_space_base, lambda_t_map, pi_weight_of_space,
    rc_algebra, regular_shrinking_dim_check, ro_algebra, weight_of_space, ContinuousMap, RcAlgebra,
};
use contalg_core::weight::{is_base, pi_weight_a, s_part, weight_w_a, zero_dim_criterion};
use contalg_core::{Axiom, Bundle, Error, FiniteSpace, LcaMorphism, LocalContactAlgebra, Result, Verdict};

use crate::files::AlgebraFile;
use crate::report::Report;

fn sets(members: impl IntoIterator<Item = u64>) -> String {
    members.into_iter().map(fmt_set).collect::<Vec<_>>().join(" ")
}

fn dim_line(label: &str, v: DimValue) -> String {
    match v {
        DimValue::Exactly(n) => format!("{label} = {n}"),
        DimValue::Above(cap) => format!("{label} > {cap}"),
    }
}

fn pairs(ps: &[(i64, i64)]) -> String {
    ps.iter().map(|(n, m)| format!("<={n} holds, <={m} fails;")).collect::<Vec<_>>().join(" ")
}

pub fn check(l: &LocalContactAlgebra) -> Report {
    let mut r = Report::new();
    let ca = l.ca();
    r.line(format!("atoms: {}", ca.atom_count()));
    let held: Vec<&str> = [
        (Bundle::Precontact, "precontact"),
        (Bundle::Contact, "contact"),
        (Bundle::Extensional, "extensional"),
        (Bundle::Normal, "normal"),
    ]
    .into_iter()
    .filter(|(b, _)| ca.check_bundle(*b).holds())
    .map(|(_, name)| name)
    .collect();
    r.line(format!("bundles: {}", if held.is_empty() { "none".into() } else { held.join(" ") }));
    for ax in Axiom::ALL {
        let v = ca.check_axiom(ax);
        let witness = v.witness().map(|f| sets(f.args.iter().copied())).unwrap_or_default();
        r.prop(ax.name(), v.holds(), witness);
    }
    for ax in LcaAxiom::ALL {
        let v = l.check_axiom(ax);
        let witness = v.witness().map(|f| sets(f.args.iter().copied())).unwrap_or_default();
        r.prop(&format!("{ax:?}"), v.holds(), witness);
    }
    r
}

/// `subset` is `None` for `D = B`; otherwise 0 and 1 are added to it.
pub fn dim(l: &LocalContactAlgebra, subset: Option<Vec<u64>>, max_n: i64, jobs: usize) -> Result<Report> {
    let mut r = Report::new();
    let ca = l.ca();
    let (label, q) = match &subset {
        None => ("dim_a", DimensionQuery::full(ca, max_n)?),
        Some(d) => {
            let mut d = d.clone();
            d.extend([0, ca.algebra().top()]);
            ("dim_a(D)", DimensionQuery::new(ca, &d, max_n)?)
        }
    };
    let q = q.jobs(jobs);
    let report = dim_a(&q)?;
    r.line(dim_line(label, report.value));
    for (n, v) in &report.levels {
        match v {
            Verdict::Holds => r.line(format!("level {n} holds")),
            Verdict::Fails(c) if c.a.is_empty() => r.line(format!("level {n} fails: the algebra is not degenerate")),
            Verdict::Fails(c) => r.line(format!("level {n} fails {c}")),
        }
    }
    r.prop("dim.monotone", report.anomalies.is_empty(), pairs(&report.anomalies));
    if subset.is_some() {
        let d = q.subset().to_vec();
        r.line(format!("D: {}", sets(d.iter().copied())));
        match is_dv_dense(ca, &d)? {
            Verdict::Fails((a, b)) => {
                r.prop("subset.dv_dense", false, format!("{} << {}", fmt_set(a), fmt_set(b)))
            }
            Verdict::Holds => {
                r.prop("subset.dv_dense", true, "");
                let inv = check_lemma_dv_invariance(ca, &d, max_n)?;
                let w = format!("full={} restricted={}", inv.full, inv.restricted);
                r.prop("subset.dimension_invariant", inv.holds(), w);
            }
        }
    }
    Ok(r)
}

pub fn weight(l: &LocalContactAlgebra) -> Result<Report> {
    let mut r = Report::new();
    let w = weight_w_a(l);
    r.line(format!("w_a = {}", w.size));
    r.line(format!("base: {}", sets(w.members.iter().copied())));
    let verified = is_base(l, &w.members)?;
    let witness = verified.witness().map(|(a, b)| format!("{} << {}", fmt_set(*a), fmt_set(*b)));
    r.prop("base.dv_dense", verified.holds(), witness.unwrap_or_default());
    r.line(format!("s_part: {}", sets(s_part(l.ca()))));
    if l.is_valid() {
        r.line(format!("zero_dim_criterion = {}", zero_dim_criterion(l)?));
    } else {
        r.line("note: not a valid local contact algebra, so w_a is only the least size of a dV-dense set");
    }
    Ok(r)
}

pub fn piweight(l: &LocalContactAlgebra) -> Result<Report> {
    let mut r = Report::new();
    let b = l.algebra();
    let p = pi_weight_a(b);
    r.line(format!("pi_w_a = {}", p.size));
    r.line(format!("dense set: {}", sets(p.members.iter().map(|e| e.bits()))));
    r.prop("dense_set.dense", is_dense_subset(b, &p.members)?, "");
    r.prop(
        "pi_w_a.atom_count",
        p.size == b.atom_count(),
        format!("atoms={}", b.atom_count()),
    );
    Ok(r)
}

pub fn product(factors: Vec<LocalContactAlgebra>) -> Result<String> {
    let factors: Vec<_> = factors.into_iter().map(Arc::new).collect();
    let (p, _) = product_lca(&factors)?;
    Ok(AlgebraFile::from_lca(&p).to_string())
}

pub fn relative(l: &LocalContactAlgebra, at: u64) -> Result<String> {
    Ok(AlgebraFile::from_lca(&relative_lca(l, at)?).to_string())
}

pub fn space_rc(r: &mut Report, rc: &RcAlgebra) {
    for (i, &s) in rc.atom_sets().iter().enumerate() {
        r.line(format!("rc atom {i} = {}", fmt_set(s)));
    }
    let v = rc.check_operations();
    r.prop("rc.operations", v.holds(), v.witness().cloned().unwrap_or_default());
}

pub fn space_ro(r: &mut Report, x: &FiniteSpace, rc: &RcAlgebra) {
    match ro_algebra(x, rc) {
        Ok(ro) => {
            for (i, &s) in ro.atom_sets().iter().enumerate() {
                let cl = rc.set_of(ro.nu().get(1 << i));
                r.line(format!("ro atom {i} = {}, closure {}", fmt_set(s), fmt_set(cl)));
            }
            let v = ro.check_operations();
            r.prop("ro.operations", v.holds(), v.witness().cloned().unwrap_or_default());
            r.prop("ro.closure_isomorphism", true, "");
        }
        Err(e) => r.prop("ro.closure_isomorphism", false, e),
    }
}

pub fn space_dim(r: &mut Report, x: &FiniteSpace, rc: &RcAlgebra, max_n: i64) -> Result<()> {
    let top = dim_cl(x, max_n);
    let alg = lca_dim_a(rc.lca(), LcaWitnesses::All, max_n)?.value;
    r.line(dim_line("dim_CL", top));
    r.line(dim_line("dim_a(RC)", alg));
    if !x.is_discrete() {
        r.line("note: the space is not T1, so the two dimensions need not agree");
        return Ok(());
    }
    r.prop("dim.agrees", top == alg, format!("dim_CL={top} dim_a={alg}"));
    for n in -1..=max_n {
        let name = format!("shrinking.level{n}");
        match regular_shrinking_dim_check(x, n) {
            Ok(c) => r.prop(
                &name,
                c.closed_shrinking == c.dim_cl_leq && c.with_interiors == c.dim_cl_leq,
                format!(
                    "closed={} interiors={} dim_CL<={n}={}",
                    c.closed_shrinking, c.with_interiors, c.dim_cl_leq
                ),
            ),
            Err(e) => r.prop(&name, false, e),
        }
    }
    Ok(())
}

pub fn space_weight(r: &mut Report, x: &FiniteSpace, rc: &RcAlgebra) {
    let w = weight_of_space(x);
    let wa = weight_w_a(rc.lca());
    r.line(format!("w = {}", w.size));
    r.line(format!("base: {}", sets(w.members.iter().copied())));
    r.line(format!("w_a(RC) = {}", wa.size));
    r.prop("base.is_base", is_space_base(x, &w.members), "");
    if x.is_discrete() {
        let n = x.point_count();
        r.prop(
            "weight.finite_divergence",
            w.size == n && wa.size == 1 << n,
            format!("w={} w_a={}", w.size, wa.size),
        );
    }
}

pub fn space_piweight(r: &mut Report, x: &FiniteSpace, rc: &RcAlgebra) {
    let p = pi_weight_of_space(x);
    let pa = pi_weight_a(rc.algebra());
    r.line(format!("pi_w = {}", p.size));
    r.line(format!("pi-base: {}", sets(p.members.iter().copied())));
    r.line(format!("pi_w_a(RC) = {}", pa.size));
    if is_pi_semiregular(x) {
        r.prop("piweight.agrees", p.size == pa.size, format!("pi_w={} pi_w_a={}", p.size, pa.size));
    } else {
        r.line("note: the space is not pi-semiregular, so the two weights need not agree");
    }
}

pub fn space_connected(r: &mut Report, x: &FiniteSpace, rc: &RcAlgebra) -> Result<()> {
    let space = is_connected_space(x);
    let algebra = rc.ca().is_connected()?;
    r.line(format!("connected = {space}"));
    r.prop("connected.agrees", space == algebra, format!("space={space} rc={algebra}"));
    Ok(())
}

fn table_lines(r: &mut Report, t: &LcaMorphism, rc: &RcAlgebra) {
    for g in 0..rc.algebra().size() {
        r.line(format!("lambda_t {} -> {}", fmt_set(rc.set_of(g)), fmt_set(rc.set_of(t.get(g)))));
    }
}

/// A `PROP` line for discrete spaces, where the laws are theorems; a plain
/// observation elsewhere.
fn law(r: &mut Report, x: &FiniteSpace, name: &str, holds: bool, witness: String) {
    if x.is_discrete() {
        r.prop(name, holds, witness);
    } else if holds {
        r.line(format!("{name} = true"));
    } else {
        r.line(format!("{name} = false {witness}"));
    }
}

/// One self-map, or every continuous self-map when `map` is `None`.
pub fn space_lambda_t(
    r: &mut Report,
    x: &FiniteSpace,
    rc: &RcAlgebra,
    map: Option<Vec<usize>>,
    jobs: usize,
) -> Result<()> {
    if !x.is_discrete() {
        r.line("note: the space is not Hausdorff, so lambda_t need not give morphisms or a functor");
    }
    if let Some(points) = map {
        let f = ContinuousMap::new(x, x, points)?;
        let t = lambda_t_map(&f, rc, rc)?;
        table_lines(r, &t, rc);
        let v = check_dhlc_morphism(&t);
        law(r, x, "lambda_t.dhlc", v.holds(), v.witness().map(ToString::to_string).unwrap_or_default());
        return Ok(());
    }
    let maps = ContinuousMap::all(x, x);
    r.line(format!("continuous self-maps: {}", maps.len()));
    let images = maps
        .iter()
        .map(|f| lambda_t_map(f, rc, rc))
        .collect::<Result<Vec<_>>>()?;
    let id = lambda_t_map(&ContinuousMap::identity(x), rc, rc)?;
    r.prop("lambda_t.identity", id == LcaMorphism::identity(rc.lca().clone()), "");

    let not_dhlc = maps.iter().zip(&images).find(|(_, t)| !check_dhlc_morphism(t).holds());
    let witness = not_dhlc.map(|(f, _)| format!("f={:?}", f.points()));
    law(r, x, "lambda_t.dhlc", not_dhlc.is_none(), witness.unwrap_or_default());

    let index: HashMap<&[usize], usize> = maps.iter().enumerate().map(|(i, f)| (f.points(), i)).collect();
    // First failing pair in index order, so the witness does not depend on the workers.
    let pair_fails = |i: usize, j: usize| -> Result<bool> {
        let gf = maps[j].after(&maps[i])?;
        Ok(images[index[gf.points()]] != compose_diamond(&images[i], &images[j])?)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let found = pool.install(|| {
        (0..maps.len()).into_par_iter().find_map_first(|i| {
            (0..maps.len()).find_map(|j| match pair_fails(i, j) {
                Ok(false) => None,
                Ok(true) => Some(Ok((i, j))),
                Err(e) => Some(Err(e)),
            })
        })
    });
    let broken = found
        .transpose()?
        .map(|(i, j)| format!("f={:?} g={:?}", maps[i].points(), maps[j].points()));
    law(r, x, "lambda_t.functorial", broken.is_none(), broken.unwrap_or_default());
    Ok(())
}

/// Every agreement between the space and its regular closed algebra that
/// applies to it.
pub fn crosscheck(x: &FiniteSpace, max_n: i64, jobs: usize) -> Result<Report> {
    let mut r = Report::new();
    let rc = rc_algebra(x);
    r.line(format!("points: {}, opens: {}, rc atoms: {}", x.point_count(), x.opens().len(), rc.atom_sets().len()));
    space_rc(&mut r, &rc);
    space_ro(&mut r, x, &rc);
    space_connected(&mut r, x, &rc)?;
    space_piweight(&mut r, x, &rc);
    space_weight(&mut r, x, &rc);
    space_dim(&mut r, x, &rc, max_n)?;
    if x.is_discrete() {
        let z = zero_dim_criterion(rc.lca())?;
        r.prop("zero_dim_criterion", z, "");
    }
    space_lambda_t(&mut r, x, &rc, None, jobs)?;
    Ok(r)
}

pub fn search(max_atoms: usize, class: RelationClass, max_n: i64, jobs: usize) -> Result<Report> {
    if max_atoms > class.max_atoms() {
        return Err(Error::TooManyAtoms {
            atoms: max_atoms,
            cap: class.max_atoms(),
        });
    }
    let mut r = Report::new();
    r.line("atoms relation precontact contact extensional normal connected dim_a lca_valid w_a");
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut total = 0;
    for k in 0..=max_atoms {
        for row in tabulate(k, class, max_n, jobs)? {
            let [p, c, e, n] = row.bundles.map(yes);
            let connected = row.connected.map_or("-", yes);
            r.line(format!(
                "{k} [{}] {p} {c} {e} {n} {connected} {} {} {}",
                sets(row.rows.iter().copied()),
                row.dim,
                yes(row.lca_valid),
                row.weight
            ));
            total += 1;
        }
    }
    r.line(format!("classes: {total}"));
    Ok(r)
}
