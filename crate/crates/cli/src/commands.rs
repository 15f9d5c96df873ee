//! One function per subcommand; each returns its results as JSON and
//! whether the verification it performs succeeded.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use gsdrum::exactla::{find_invertible_intertwiner, intertwiner_space, SearchOptions};
use gsdrum::gallery::{
    dihedral_geometry, gww_domains, projective_geometry, quadratic_design, wreath_triple, DomainFile, FormType,
    ProjectiveSpec, QuadraticDesignSpec, TileDomain, WreathSpec,
};
use gsdrum::geom::{automorphism_group, find_duality, FixCheck, GeometryFile, DEFAULT_SEARCH_BUDGET};
use gsdrum::group::named::{cyclic, symmetric};
use gsdrum::iso::{are_isomorphic, Decision};
use gsdrum::spectral::{
    compare_spectra, compute_spectrum, parse_rational, weyl_check, EigenOptions, SpectrumComparison,
};
use gsdrum::{
    build_drum_geometry, check_flags, DGeometry, FlagReport, GSTriple, GroupFile, IncidenceGeometry, Spectrum64,
    TripleFile,
};

use crate::report::{write_json, Session};
use crate::{Command, Form, GenCommand, GeometryArgs, Outcome, TopGroup, Which};

pub fn run(command: &Command, seed: u64, session: &mut Session) -> Result<Outcome> {
    match command {
        Command::Check { triple } => check(session, triple),
        Command::Geometry(args) => geometry(session, args),
        Command::Gen(g) => generate(g),
        Command::Wreath { triple, copies, top, out } => wreath(session, triple, *copies, *top, out.as_deref()),
        Command::Intertwine { triple } => intertwine(session, triple, seed),
        Command::Spectrum { domain, h, k, out } => spectrum(session, domain, h, *k, out.as_deref(), seed),
        Command::Compare { a, b, h, k, tolerance } => compare(session, a, b, h, *k, *tolerance, seed),
        Command::Weyl { spectrum, area, tolerance } => weyl(session, spectrum, area, *tolerance),
        Command::Roundtrip { triple } => roundtrip(session, triple),
    }
}

/// Loads a triple file; a group given by path is resolved relative to the triple file.
fn load_triple(session: &mut Session, path: &Path) -> Result<GSTriple> {
    let file: TripleFile = session.read_json(path)?;
    let dir = path.parent().unwrap_or(Path::new(""));
    let mut group_error = None;
    let triple = file.to_triple(|group_path| {
        session.read_json::<GroupFile>(&dir.join(group_path)).map_err(|e| {
            let message = format!("{e:#}");
            group_error = Some(e);
            gsdrum::Error::Format(message)
        })
    });
    if let Some(e) = group_error {
        return Err(e);
    }
    triple.with_context(|| format!("invalid triple in {}", path.display()))
}

fn triple_summary(t: &GSTriple) -> Value {
    json!({
        "degree": t.group().degree(),
        "group_order": t.group().order(),
        "u_order": t.left().order(),
        "v_order": t.right().order(),
        "u_index": t.left_index(),
        "v_index": t.right_index(),
    })
}

fn fix_check(c: &FixCheck) -> Value {
    json!({
        "holds": c.holds,
        "classes_checked": c.classes_checked,
        "witness": c.witness.as_ref().map(|w| json!({
            "element": w.element.to_string(),
            "fixed_points": w.fixed_points,
            "fixed_lines": w.fixed_lines,
        })),
    })
}

fn check(session: &mut Session, path: &Path) -> Result<Outcome> {
    let t = load_triple(session, path)?;
    let flags: FlagReport = session.time("flags", || check_flags(&t))?;
    let holds = flags.ec;
    Ok(Outcome { results: json!({ "triple": triple_summary(&t), "flags": flags }), holds })
}

fn degrees(values: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = values.collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn geometry(session: &mut Session, args: &GeometryArgs) -> Result<Outcome> {
    let d = match (&args.triple, &args.geometry) {
        (Some(path), _) => {
            let t = load_triple(session, path)?;
            session.time("build", || build_drum_geometry(&t))?
        }
        (None, Some(path)) => {
            let file: GeometryFile = session.read_json(path)?;
            let g = IncidenceGeometry::from_file(&file)?;
            let group = session.time("automorphisms", || automorphism_group(&g, DEFAULT_SEARCH_BUDGET))?;
            DGeometry::new(g, group)?
        }
        (None, None) => bail!("one of --triple or --geometry is required"),
    };
    let g = d.geometry();
    let (dcheck, sd) = session.time("verify", || (d.verify_d(), d.verify_sd()));
    let square = g.num_points() == g.num_lines();
    let determinant =
        if square { Some(session.time("determinant", || g.is_super_strong())?.determinant) } else { None };
    let design = g.is_symmetric_design();
    let duality = if square { session.time("duality", || find_duality(g, DEFAULT_SEARCH_BUDGET))? } else { None };
    let mut pa_eq_al = true;
    for alpha in d.group().generators() {
        pa_eq_al &= d.verify_pa_eq_al(alpha)?;
    }
    let singular = determinant.as_ref().is_some_and(|det| det == &0.into());
    let finding =
        (sd.holds && singular).then_some("SD holds but the incidence matrix is singular (strong but not super strong)");
    if let Some(path) = &args.out {
        write_json(path, &g.to_file())?;
    }
    if let Some(path) = &args.dot {
        std::fs::write(path, g.to_dot()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let results = json!({
        "points": g.num_points(),
        "lines": g.num_lines(),
        "point_degrees": degrees((0..g.num_points()).map(|p| g.point_degree(p))),
        "line_degrees": degrees((0..g.num_lines()).map(|l| g.line_degree(l))),
        "group_order": d.group().order(),
        "transitive": d.is_transitive(),
        "d": fix_check(&dcheck),
        "sd": fix_check(&sd),
        "determinant": determinant.map(|x| x.to_string()),
        "super_strong": square.then_some(!singular),
        "design": design,
        "self_dual": duality.is_some(),
        "pa_eq_al": pa_eq_al,
        "finding": finding,
    });
    Ok(Outcome { results, holds: sd.holds })
}

fn write_triple(path: &Path, name: &str, t: &GSTriple) -> Result<()> {
    write_json(path, &TripleFile::from_triple(name, t))
}

fn generate(command: &GenCommand) -> Result<Outcome> {
    let results = match command {
        GenCommand::Pg { n, p, out } => {
            let space = projective_geometry(ProjectiveSpec { n: *n, p: *p })?;
            write_triple(out, &format!("PGL({n},{p})"), &space.triple)?;
            json!({
                "family": "projective",
                "n": n,
                "p": p,
                "points": space.points.len(),
                "hyperplanes": space.hyperplanes.len(),
                "triple": triple_summary(&space.triple),
                "out": out.display().to_string(),
            })
        }
        GenCommand::Design { m, form, orthogonal, out } => {
            let form = match form {
                Form::Hyperbolic => FormType::Hyperbolic,
                Form::Elliptic => FormType::Elliptic,
            };
            let design = quadratic_design(QuadraticDesignSpec { m: *m, form, orthogonal: *orthogonal })?;
            // block `b` is `b + D`, so block `D[0]` passes through point 0
            let t = design.geometry.triple(0, design.difference_set[0])?;
            write_triple(out, &format!("design-{}-{m}", form_name(form)), &t)?;
            json!({
                "family": "quadratic-design",
                "m": m,
                "form": form,
                "orthogonal": orthogonal,
                "parameters": design.parameters,
                "difference_set": design.difference_set,
                "triple": triple_summary(&t),
                "out": out.display().to_string(),
            })
        }
        GenCommand::Dihedral { n, out } => {
            let t = dihedral_geometry(*n)?.triple(0, 0)?;
            write_triple(out, &format!("D{n}"), &t)?;
            json!({ "family": "dihedral", "n": n, "triple": triple_summary(&t), "out": out.display().to_string() })
        }
        GenCommand::Gww { which, out } => {
            let (a, b) = gww_domains();
            let (name, domain) = match which {
                Which::A => ("a", a),
                Which::B => ("b", b),
            };
            write_json(out, &domain.to_file())?;
            json!({
                "family": "gww",
                "which": name,
                "triangles": domain.triangles().len(),
                "area": domain.area().to_string(),
                "out": out.display().to_string(),
            })
        }
    };
    Ok(Outcome { results, holds: true })
}

fn form_name(form: FormType) -> &'static str {
    match form {
        FormType::Hyperbolic => "hyperbolic",
        FormType::Elliptic => "elliptic",
    }
}

fn wreath(session: &mut Session, path: &Path, copies: usize, top: TopGroup, out: Option<&Path>) -> Result<Outcome> {
    let base = load_triple(session, path)?;
    let top_group = match top {
        TopGroup::Symmetric => symmetric(copies),
        TopGroup::Cyclic => cyclic(copies),
    };
    let t = session.time("build", || wreath_triple(&WreathSpec { base: base.clone(), copies, top: top_group }))?;
    let base_flags = check_flags(&base)?;
    let flags = session.time("flags", || check_flags(&t))?;
    let preserved = [
        (base_flags.ec, flags.ec),
        (base_flags.ac, flags.ac),
        (base_flags.ff, flags.ff),
        (base_flags.max, flags.max),
        (base_flags.pair, flags.pair),
    ]
    .iter()
    .all(|(b, w)| !b || *w);
    if let Some(out) = out {
        write_triple(out, "wreath", &t)?;
    }
    let results = json!({
        "copies": copies,
        "top": match top { TopGroup::Symmetric => "symmetric", TopGroup::Cyclic => "cyclic" },
        "triple": triple_summary(&t),
        "base_flags": base_flags,
        "flags": flags,
        "preserved": preserved,
    });
    Ok(Outcome { results, holds: preserved })
}

fn intertwine(session: &mut Session, path: &Path, seed: u64) -> Result<Outcome> {
    let t = load_triple(session, path)?;
    if t.left_index() != t.right_index() {
        let results = json!({
            "triple": triple_summary(&t),
            "dimension": 0,
            "found": false,
            "reason": format!("coset indices differ: {} vs {}", t.left_index(), t.right_index()),
        });
        return Ok(Outcome { results, holds: false });
    }
    let basis = session.time("nullspace", || intertwiner_space(&t))?;
    let options = SearchOptions { seed, ..SearchOptions::default() };
    let found = session.time("search", || find_invertible_intertwiner(&basis, &options));
    let results = match &found {
        Some(f) => json!({
            "triple": triple_summary(&t),
            "dimension": basis.len(),
            "found": true,
            "determinant": f.determinant.to_string(),
            "coefficients": f.coefficients,
            "matrix": f.matrix.to_string_rows(),
        }),
        None => json!({
            "triple": triple_summary(&t),
            "dimension": basis.len(),
            "found": false,
            "reason": "no nonsingular combination found in the search",
        }),
    };
    Ok(Outcome { results, holds: found.is_some() })
}

fn load_domain(session: &mut Session, path: &Path) -> Result<TileDomain> {
    let file: DomainFile = session.read_json(path)?;
    TileDomain::from_file(&file).with_context(|| format!("invalid domain in {}", path.display()))
}

fn eigen_options(seed: u64) -> EigenOptions {
    EigenOptions { seed, ..EigenOptions::default() }
}

fn spectrum(session: &mut Session, path: &Path, h: &str, k: usize, out: Option<&Path>, seed: u64) -> Result<Outcome> {
    let domain = load_domain(session, path)?;
    let step = parse_rational(h)?;
    let s: Spectrum64 = session.time("eigen", || compute_spectrum(&domain, step, k, &eigen_options(seed)))?;
    if let Some(out) = out {
        write_json(out, &s)?;
    }
    let max_residual = s.residuals.iter().copied().fold(0.0, f64::max);
    let results = json!({
        "area": domain.area().to_string(),
        "h": s.h,
        "k": s.k,
        "eigenvalues": s.eigenvalues,
        "max_residual": max_residual,
    });
    Ok(Outcome { results, holds: true })
}

fn comparison(c: &SpectrumComparison) -> Value {
    json!({ "h": c.h, "max_difference": c.max_difference, "relative_differences": c.relative_differences })
}

fn compare(session: &mut Session, a: &Path, b: &Path, h: &str, k: usize, tolerance: f64, seed: u64) -> Result<Outcome> {
    let (da, db) = (load_domain(session, a)?, load_domain(session, b)?);
    let step = parse_rational(h)?;
    let options = eigen_options(seed);
    let at = |session: &mut Session, step| -> Result<SpectrumComparison> {
        let sa: Spectrum64 = session.time("eigen", || compute_spectrum(&da, step, k, &options))?;
        let sb: Spectrum64 = session.time("eigen", || compute_spectrum(&db, step, k, &options))?;
        Ok(compare_spectra(&sa, &sb, k)?)
    };
    let fine = at(session, step)?;
    // the coarse step need not fit the domain; it is informational only
    let coarse = at(session, step * 2).ok();
    let ratio = coarse.as_ref().map(|c| c.max_difference / fine.max_difference);
    let holds = fine.max_difference < tolerance;
    let results = json!({
        "k": k,
        "tolerance": tolerance,
        "fine": comparison(&fine),
        "coarse": coarse.as_ref().map(comparison),
        "refinement_ratio": ratio.filter(|r| r.is_finite()),
        "within_tolerance": holds,
    });
    Ok(Outcome { results, holds })
}

fn weyl(session: &mut Session, path: &Path, area: &str, tolerance: f64) -> Result<Outcome> {
    let s: Spectrum64 = session.read_json(path)?;
    let area = parse_rational(area)?;
    let w = weyl_check(&s.eigenvalues, area)?;
    let holds = (w.ratio - 1.0).abs() <= tolerance;
    let results = json!({
        "k": s.eigenvalues.len(),
        "area": area.to_string(),
        "slope": w.slope,
        "expected": w.expected,
        "ratio": w.ratio,
        "points_used": w.points_used,
        "tolerance": tolerance,
        "within_tolerance": holds,
    });
    Ok(Outcome { results, holds })
}

fn roundtrip(session: &mut Session, path: &Path) -> Result<Outcome> {
    let t = load_triple(session, path)?;
    let flags = session.time("flags", || check_flags(&t))?;
    let d = session.time("build", || build_drum_geometry(&t))?;
    let (dcheck, sd) = session.time("verify", || (d.verify_d(), d.verify_sd()));
    let back = d.triple(0, 0)?;
    let iso = session.time("isomorphism", || are_isomorphic(&t, &back))?;
    let matches = flags.ac == sd.holds && flags.ec == dcheck.holds;
    let holds = matches && iso.decision == Decision::Yes;
    let results = json!({
        "triple": triple_summary(&t),
        "ac": flags.ac,
        "ec": flags.ec,
        "points": d.num_points(),
        "lines": d.num_lines(),
        "d": fix_check(&dcheck),
        "sd": fix_check(&sd),
        "ac_iff_sd": flags.ac == sd.holds,
        "ec_iff_d": flags.ec == dcheck.holds,
        "isomorphic": iso.decision,
        "candidates_examined": iso.candidates_examined,
    });
    Ok(Outcome { results, holds })
}
