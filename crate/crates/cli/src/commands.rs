//! Implementations of the five subcommands.  Every command is sequential and
//! deterministic; `--jobs` changes scheduling only, never output.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num::BigInt;

use dualpolar::error::{Error, Result};
use dualpolar::exactla;
use dualpolar::formulas::{self, FormulaReport, ParamTriple};
use dualpolar::forms::{
    make_polar_space_with_budget, Family, PolarSpaceDescriptor, DEFAULT_GENERATOR_BUDGET,
};
use dualpolar::graphs::{self, Graph};
use dualpolar::isotropic;
use dualpolar::resolving::{self, ExactOutcome, DEFAULT_SEARCH_BUDGET};
use dualpolar::serialize;

use crate::{Format, Minimize};

/// POLAR_BUDGET overrides both the enumeration cap and the subset-search cap.
fn env_budget() -> Result<Option<u64>> {
    match std::env::var("POLAR_BUDGET") {
        Ok(v) => v
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Error::InvalidParameter(format!("POLAR_BUDGET is not a number: {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn generator_budget() -> Result<u64> {
    Ok(env_budget()?.unwrap_or(DEFAULT_GENERATOR_BUDGET))
}

fn search_budget() -> Result<u64> {
    Ok(env_budget()?.unwrap_or(DEFAULT_SEARCH_BUDGET))
}

fn parse_instance(family: &str, q: u64, d: u32) -> Result<(Family, u8, usize)> {
    let fam = Family::parse(family)?;
    // Validate counting-level constraints first for a precise message.
    ParamTriple::new(fam, q, d)?;
    let q8 = u8::try_from(q)
        .map_err(|_| Error::InvalidParameter(format!("q = {q} is beyond the enumeration range")))?;
    Ok((fam, q8, d as usize))
}

fn build_space(family: &str, q: u64, d: u32) -> Result<PolarSpaceDescriptor> {
    let (fam, q8, d) = parse_instance(family, q, d)?;
    make_polar_space_with_budget(fam, q8, d, generator_budget()?)
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content).map_err(Error::from),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn instance_label(p: &PolarSpaceDescriptor) -> String {
    format!("{}(q={},d={})", p.family().code(), p.q(), p.d())
}

// ---------------------------------------------------------------- formulas

pub fn cmd_formulas(
    family: &str,
    q: u64,
    d: u32,
    format: Format,
    out: Option<&Path>,
) -> Result<i32> {
    let fam = Family::parse(family)?;
    let t = ParamTriple::new(fam, q, d)?;
    let r = formulas::full_report(&t)?;
    let content = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&serialize::formula_report_to_json(&r))
                .expect("json map serializes");
            s.push('\n');
            s
        }
        Format::Csv => formulas_csv(&r),
        Format::Text => formulas_text(&r),
    };
    emit(out, &content)?;
    Ok(0)
}

const FORMULA_COLUMNS: [&str; 17] = [
    "family", "q", "d", "e2", "points", "generators", "n", "k", "a", "c", "theta1", "theta2",
    "m1", "m2", "rank_bound", "family_bound", "gwl_bound",
];

fn formulas_csv(r: &FormulaReport) -> String {
    let mut row: Vec<String> = vec![
        r.family.code().to_string(),
        r.q.to_string(),
        r.d.to_string(),
        r.e2.to_string(),
        r.points.to_string(),
        r.generators.to_string(),
    ];
    match &r.srg {
        Some(s) => row.extend([
            s.n.to_string(),
            s.k.to_string(),
            s.a.to_string(),
            s.c.to_string(),
            s.theta1.to_string(),
            s.theta2.to_string(),
            s.m1.to_string(),
            s.m2.to_string(),
        ]),
        None => row.extend(std::iter::repeat(String::new()).take(8)),
    }
    row.push(r.rank_bound.to_string());
    row.push(r.family_bound.to_string());
    row.push(r.gwl_bound.as_ref().map(BigInt::to_string).unwrap_or_default());
    format!("{}\n{}\n", FORMULA_COLUMNS.join(","), row.join(","))
}

fn formulas_text(r: &FormulaReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family:       {}", r.family.code());
    let _ = writeln!(s, "q:            {}", r.q);
    let _ = writeln!(s, "d:            {}", r.d);
    let _ = writeln!(s, "e:            {}/2", r.e2);
    let _ = writeln!(s, "points:       {}", r.points);
    let _ = writeln!(s, "generators:   {}", r.generators);
    if let Some(v) = &r.srg {
        let _ = writeln!(s, "srg:          ({}, {}, {}, {})", v.n, v.k, v.a, v.c);
        let _ = writeln!(s, "theta1, m1:   {}, {}", v.theta1, v.m1);
        let _ = writeln!(s, "theta2, m2:   {}, {}", v.theta2, v.m2);
    }
    let _ = writeln!(s, "rank_bound:   {}", r.rank_bound);
    let _ = writeln!(s, "family_bound: {}", r.family_bound);
    if let Some(g) = &r.gwl_bound {
        let _ = writeln!(s, "gwl_bound:    {g}");
    }
    s
}

// ------------------------------------------------------------------- build

pub fn cmd_build(family: &str, q: u64, d: u32, out: &Path) -> Result<i32> {
    let p = build_space(family, q, d)?;
    let points = isotropic::enumerate_points(&p);
    let gens = isotropic::enumerate_isotropic(&p, p.d())?;
    let graph = graphs::dual_polar_graph(&p, &gens);
    let m = exactla::incidence_matrix(&p, &points, &gens)?;

    fs::create_dir_all(out)?;
    let json = serde_json::to_string_pretty(&serialize::descriptor_to_json(&p))
        .expect("json map serializes");
    fs::write(out.join("descriptor.json"), json + "\n")?;
    fs::write(
        out.join("points.txt"),
        serialize::subspace_list_to_string(&p, 1, &points),
    )?;
    fs::write(
        out.join("generators.txt"),
        serialize::subspace_list_to_string(&p, p.d(), &gens),
    )?;
    fs::write(out.join("edges.txt"), serialize::edge_list_to_string(&p, &graph))?;
    fs::write(out.join("incidence.txt"), serialize::incidence_dense_to_string(&m))?;
    fs::write(out.join("incidence_pairs.txt"), serialize::incidence_pairs_to_string(&m))?;

    println!(
        "{}: points={} generators={} edges={}",
        instance_label(&p),
        points.len(),
        gens.len(),
        graph.edge_count()
    );

    // The build is only good if enumeration agrees with the closed forms.
    let t = p.param_triple();
    let ok = BigInt::from(points.len()) == formulas::point_count(&t)?
        && BigInt::from(gens.len()) == formulas::generator_count(&t)?;
    if !ok {
        eprintln!("check failed: enumerated counts disagree with the closed forms");
        return Ok(1);
    }
    Ok(0)
}

// ----------------------------------------------------------------- resolve

pub fn cmd_resolve(
    family: &str,
    q: u64,
    d: u32,
    minimize: Minimize,
    out: Option<&Path>,
) -> Result<i32> {
    let p = build_space(family, q, d)?;
    let points = isotropic::enumerate_points(&p);
    let gens = isotropic::enumerate_isotropic(&p, p.d())?;
    let (rowbasis, _m, dist) = resolving::rowbasis_resolving_set(&p, &points, &gens)?;
    let bound = rowbasis.size();
    println!(
        "{}: bound={} size={} method={} verified=true",
        instance_label(&p),
        bound,
        rowbasis.size(),
        rowbasis.method.code()
    );

    let mut best = rowbasis;
    if matches!(minimize, Minimize::Greedy | Minimize::Exact) {
        let greedy = resolving::greedy_minimize(&dist, &best);
        println!(
            "{}: bound={} size={} method={} verified=true",
            instance_label(&p),
            bound,
            greedy.size(),
            greedy.method.code()
        );
        best = greedy;
    }
    if minimize == Minimize::Exact {
        match resolving::exact_metric_dimension(&dist, best.size(), search_budget()?)? {
            ExactOutcome::Found(exact) => {
                println!(
                    "{}: bound={} size={} method={} verified=true",
                    instance_label(&p),
                    bound,
                    exact.size(),
                    exact.method.code()
                );
                best = exact;
            }
            ExactOutcome::ExceedsLimit => unreachable!("a set of the limit size exists"),
        }
    }

    if resolving::verify_resolving(&dist, &best.vertices).is_err() {
        return Err(Error::InvariantViolation(
            "final resolving set fails verification".into(),
        ));
    }
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&serialize::resolving_set_to_json(&p, &best))
            .expect("json map serializes");
        fs::write(path, json + "\n")?;
    }
    Ok(0)
}

// -------------------------------------------------------------- verify-all

struct CheckRow {
    check: &'static str,
    expected: String,
    observed: String,
}

impl CheckRow {
    fn pass(&self) -> bool {
        self.expected == self.observed
    }
}

fn push_outcome(rows: &mut Vec<CheckRow>, check: &'static str, r: Result<()>) {
    let observed = match r {
        Ok(()) => "holds".to_string(),
        Err(e) => e.to_string(),
    };
    rows.push(CheckRow {
        check,
        expected: "holds".into(),
        observed,
    });
}

pub fn cmd_verify_all(
    family: &str,
    q: u64,
    d: u32,
    edges: Option<&Path>,
    out: Option<&Path>,
) -> Result<i32> {
    let p = build_space(family, q, d)?;
    let t = p.param_triple();
    let points = isotropic::enumerate_points(&p);
    let gens = isotropic::enumerate_isotropic(&p, p.d())?;
    let mut rows: Vec<CheckRow> = Vec::new();

    rows.push(CheckRow {
        check: "omega1_count",
        expected: formulas::point_count(&t)?.to_string(),
        observed: points.len().to_string(),
    });
    rows.push(CheckRow {
        check: "omegad_count",
        expected: formulas::generator_count(&t)?.to_string(),
        observed: gens.len().to_string(),
    });

    let dual = match edges {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            let list = serialize::parse_edge_list(&text)?;
            for &(i, j) in &list {
                if i >= gens.len() || j >= gens.len() || i == j {
                    return Err(Error::Parse(format!("edge ({i}, {j}) is out of range")));
                }
            }
            Graph::from_edges(gens.len(), &list)
        }
        None => graphs::dual_polar_graph(&p, &gens),
    };
    push_outcome(
        &mut rows,
        "distance_law",
        graphs::check_distance_law(&p, &dual, &gens),
    );

    let m = exactla::incidence_matrix(&p, &points, &gens)?;
    if p.d() >= 2 {
        let coll = graphs::collinearity_graph(&p, &points);
        let srg = formulas::eval_srg(&t)?;
        rows.push(CheckRow {
            check: "srg_parameters",
            expected: format!("({}, {}, {}, {})", srg.n, srg.k, srg.a, srg.c),
            observed: match graphs::measure_srg(&coll) {
                Ok(v) => format!("({}, {}, {}, {})", v.n, v.k, v.a, v.c),
                Err(e) => e.to_string(),
            },
        });
        let t1 = i64::try_from(&srg.theta1).expect("small eigenvalue");
        let t2 = i64::try_from(&srg.theta2).expect("small eigenvalue");
        rows.push(CheckRow {
            check: "eigen_multiplicity_theta1",
            expected: srg.m1.to_string(),
            observed: graphs::eigen_multiplicity(&coll, t1).to_string(),
        });
        rows.push(CheckRow {
            check: "eigen_multiplicity_theta2",
            expected: srg.m2.to_string(),
            observed: graphs::eigen_multiplicity(&coll, t2).to_string(),
        });
        push_outcome(
            &mut rows,
            "gram_identity",
            exactla::gram_product_check(&p, &m, &coll),
        );
        push_outcome(&mut rows, "nullity_equals_m2", exactla::nullity_equals_m2(&p, &m));
    }

    rows.push(CheckRow {
        check: "incidence_rank",
        expected: formulas::eval_rank_bound(&t)?.to_string(),
        observed: exactla::rank_exact(&m.to_exact()).to_string(),
    });
    rows.push(CheckRow {
        check: "table_bound_consistency",
        expected: formulas::eval_rank_bound(&t)?.to_string(),
        observed: formulas::eval_family_bound(&t, p.family())?.to_string(),
    });
    push_outcome(
        &mut rows,
        "rowbasis_resolving",
        resolving::rowbasis_resolving_set(&p, &points, &gens).map(|_| ()),
    );

    let label = instance_label(&p);
    let mut csv = String::from("instance,check,expected,observed,pass\n");
    let mut all_pass = true;
    for r in &rows {
        let pass = r.pass();
        all_pass &= pass;
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            label,
            r.check,
            csv_quote(&r.expected),
            csv_quote(&r.observed),
            pass
        );
    }
    emit(out, &csv)?;
    Ok(if all_pass { 0 } else { 1 })
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

// ------------------------------------------------------------------- table

const TABLE_COLUMNS: [&str; 12] = [
    "family", "q", "d", "e2", "points", "generators", "rank", "bound", "gwl_bound",
    "resolving_size", "greedy_size", "exact_min",
];

/// `family:qmin..qmax:dmin..dmax`, inclusive on both ranges.
fn parse_grid(spec: &str) -> Result<(Family, std::ops::RangeInclusive<u64>, std::ops::RangeInclusive<u32>)> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "grid {spec:?} is not family:qmin..qmax:dmin..dmax"
        )));
    }
    let fam = Family::parse(parts[0])?;
    let parse_range = |s: &str| -> Result<(u64, u64)> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| Error::Parse(format!("range {s:?} is not lo..hi")))?;
        let lo = lo
            .parse()
            .map_err(|e| Error::Parse(format!("range {s:?}: {e}")))?;
        let hi = hi
            .parse()
            .map_err(|e| Error::Parse(format!("range {s:?}: {e}")))?;
        Ok((lo, hi))
    };
    let (qlo, qhi) = parse_range(parts[1])?;
    let (dlo, dhi) = parse_range(parts[2])?;
    if dlo < 1 {
        return Err(Error::Parse("d range must start at 1 or higher".into()));
    }
    Ok((fam, qlo..=qhi, dlo as u32..=dhi as u32))
}

pub fn cmd_table(grids: &[String], max_generators: u64, out: Option<&Path>) -> Result<i32> {
    let search = search_budget()?;
    let mut csv = String::from(TABLE_COLUMNS.join(",").as_str());
    csv.push('\n');
    for spec in grids {
        let (fam, qrange, drange) = parse_grid(spec)?;
        for q in qrange.clone() {
            for d in drange.clone() {
                // Skip q values this family does not admit (non prime
                // powers; non-squares for the unitary families).
                let t = match ParamTriple::new(fam, q, d) {
                    Ok(t) => t,
                    Err(_) => continue,
                };
                csv.push_str(&table_row(&t, max_generators, search)?);
            }
        }
    }
    emit(out, &csv)?;
    Ok(0)
}

fn table_row(t: &ParamTriple, max_generators: u64, search: u64) -> Result<String> {
    let points = formulas::point_count(t)?;
    let generators = formulas::generator_count(t)?;
    let bound = formulas::eval_rank_bound(t)?;
    let gwl = if t.family == Family::Cd && t.d >= 2 {
        formulas::eval_gwl_bound(t)?.to_string()
    } else {
        String::new()
    };

    let mut rank = String::new();
    let mut resolving_size = String::new();
    let mut greedy_size = String::new();
    let mut exact_min = String::new();
    let enumerable = t.q <= 16 && generators <= BigInt::from(max_generators);
    if enumerable {
        let p = make_polar_space_with_budget(t.family, t.q as u8, t.d as usize, max_generators)?;
        let pts = isotropic::enumerate_points(&p);
        let gens = isotropic::enumerate_isotropic(&p, p.d())?;
        let m = exactla::incidence_matrix(&p, &pts, &gens)?;
        rank = exactla::rank_exact(&m.to_exact()).to_string();
        let (row, _, dist) = resolving::rowbasis_resolving_set(&p, &pts, &gens)?;
        resolving_size = row.size().to_string();
        let greedy = resolving::greedy_minimize(&dist, &row);
        greedy_size = greedy.size().to_string();
        if gens.len() <= 16 {
            match resolving::exact_metric_dimension(&dist, greedy.size(), search) {
                Ok(ExactOutcome::Found(min)) => exact_min = min.size().to_string(),
                Ok(ExactOutcome::ExceedsLimit) => exact_min = greedy.size().to_string(),
                Err(Error::SearchBudget(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }

    Ok(format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}\n",
        t.family.code(),
        t.q,
        t.d,
        t.e2,
        points,
        generators,
        rank,
        bound,
        gwl,
        resolving_size,
        greedy_size,
        exact_min
    ))
}
