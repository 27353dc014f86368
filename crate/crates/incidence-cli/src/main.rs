//! `icx`: command line front end for the incidence crate.
//!
//! Commands read the JSON complex format from a file argument or stdin
//! (`-`) and write JSON to stdout, so constructions compose as pipelines:
//!
//! ```text
//! icx gen polygon 4 | icx power --n 2 | icx map-genus
//! ```
//!
//! Exit codes: 0 success, 1 bad input (unparseable or unsuitable
//! arguments), 2 validation failure (input or result breaks the axioms or
//! an operation's precondition), 3 size cap exceeded.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use incidence::catalog::{generate, CatalogKey};
use incidence::complex::{ComplexError, IncidenceComplex};
use incidence::covering::{
    classify, induced_covering_f, induced_covering_g, quotient, vertex_fiber_sizes,
    BlockValueMap, ComplexMap, CoveringError, InducedCovering, MapWitness, ValueMap,
};
use incidence::json::{
    complex_to_json, parse_json, poset_from_json, poset_to_json, power_to_json, to_json_string,
    JsonError,
};
use incidence::perm::{Perm, PermError, PermGroup};
use incidence::poset::FaceId;
use incidence::power::{
    power_complex_capped, skeleton, PowerComplex, PowerError, DEFAULT_FACE_CAP,
};
use incidence::surface::{surface_info, SurfaceError};
use incidence::symmetry::{automorphism_group, flag_orbit_count, SymmetryError};
use incidence::validate::{validate, ValidationReport};

#[derive(Parser)]
#[command(name = "icx", version, about = "Incidence complex toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    /// JSON complex format
    #[default]
    Json,
    /// Flag graph in Graphviz DOT
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a named complex: simplex V | polygon Q | cube V |
    /// complex_cube V N | rank1 V | torus44 S | torus36 B
    Gen {
        name: String,
        params: Vec<i64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check the incidence axioms; exits 2 when they fail
    Validate {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Power complex of a vertex-describable complex
    Power {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        n: u16,
        /// Maximum face count of the result
        #[arg(long, default_value_t = DEFAULT_FACE_CAP)]
        cap: usize,
        /// Emit an envelope with the face table (base and fixed values)
        #[arg(long)]
        with_faces: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Faces of rank at most RANK, with a new greatest face
    Skeleton {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        rank: i32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Section between two incident faces
    Section {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        low: u32,
        #[arg(long)]
        high: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Automorphism group: order and generators in cycle notation
    Aut {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Flag orbit count under the automorphism group
    Regular {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Classify a face map between two complexes
    Classify {
        source: String,
        target: String,
        /// Images as a JSON array of target face ids, inline or @file
        #[arg(long)]
        map: String,
    },
    /// Induce n^K -> m^L from a covering K -> L and a value map f
    CoverF {
        /// Source base complex K
        source: String,
        /// Target base complex L
        target: String,
        /// Covering K -> L as a JSON array of face ids, inline or @file
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        n: u16,
        /// Surjective value relabeling {1..n} -> {1..m} as a JSON array
        #[arg(long)]
        f: String,
    },
    /// Induce n^K -> m^L from an equifibered covering and a block map g
    CoverG {
        /// Source base complex K
        source: String,
        /// Target base complex L
        target: String,
        /// Covering K -> L as a JSON array of face ids, inline or @file
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        n: u16,
        /// Surjective block map {1..n}^l -> {1..m} as a JSON array in
        /// lexicographic block order
        #[arg(long)]
        g: String,
    },
    /// Orbit poset under automorphisms given in cycle notation
    Quotient {
        #[arg(default_value = "-")]
        input: String,
        /// Generator in cycle notation, repeatable: --sigma "(1 4)(2 5)"
        #[arg(long)]
        sigma: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rank, f-vector, c-vector, vertex-describability
    Invariants {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Euler characteristic and genus of a rank-3 polytopal map
    MapGenus {
        #[arg(default_value = "-")]
        input: String,
    },
}

enum Failure {
    BadInput(String),
    Invalid(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::BadInput(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::BadInput(m) | Failure::Invalid(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        match e {
            JsonError::Complex(inner) => complex_failure(inner),
            other => Failure::BadInput(other.to_string()),
        }
    }
}

fn complex_failure(e: ComplexError) -> Failure {
    match e {
        ComplexError::NotAComplex(report) => {
            Failure::Invalid(format!("not a complex: {}", summarize(&report)))
        }
        other => Failure::BadInput(other.to_string()),
    }
}

impl From<PowerError> for Failure {
    fn from(e: PowerError) -> Self {
        match e {
            PowerError::FaceCapExceeded { .. } => Failure::Cap(e.to_string()),
            PowerError::NotVertexDescribable | PowerError::Build(_) => {
                Failure::Invalid(e.to_string())
            }
            other => Failure::BadInput(other.to_string()),
        }
    }
}

impl From<SymmetryError> for Failure {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::SearchCapExceeded { .. } | SymmetryError::ElementCapExceeded { .. } => {
                Failure::Cap(e.to_string())
            }
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<CoveringError> for Failure {
    fn from(e: CoveringError) -> Self {
        match e {
            CoveringError::NotACovering { .. } | CoveringError::NotEquifibered { .. } => {
                Failure::Invalid(e.to_string())
            }
            CoveringError::Power(p) => p.into(),
            other => Failure::BadInput(other.to_string()),
        }
    }
}

impl From<SurfaceError> for Failure {
    fn from(e: SurfaceError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<PermError> for Failure {
    fn from(e: PermError) -> Self {
        match e {
            PermError::TooManyElements { .. } => Failure::Cap(e.to_string()),
            other => Failure::BadInput(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::BadInput(format!("reading stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| Failure::BadInput(format!("{path}: {e}")))?
    };
    Ok(text)
}

fn load_complex(path: &str) -> Result<IncidenceComplex, Failure> {
    let j = parse_json(&read_input(path)?)?;
    let p = poset_from_json(&j)?;
    Ok(IncidenceComplex::from_poset(&p).map_err(complex_failure)?)
}

/// Parses a JSON array argument given inline or as `@path`.
fn array_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Result<Vec<T>, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => read_input(path)?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Failure::BadInput(format!("array argument: {e}")))
}

fn emit_complex(c: &IncidenceComplex, format: Format) {
    match format {
        Format::Json => println!("{}", to_json_string(&complex_to_json(c))),
        Format::Dot => print!("{}", c.flag_graph().to_dot()),
    }
}

fn summarize(report: &ValidationReport) -> String {
    report
        .violations
        .iter()
        .map(|v| format!("{:?}: {}", v.axiom, v.detail))
        .collect::<Vec<_>>()
        .join("; ")
}

fn print_report(report: &ValidationReport) {
    println!("is_complex: {}", report.is_complex);
    if let Some(c) = &report.c {
        println!("c: {c:?}");
    }
    if !report.violations.is_empty() {
        println!("violations:");
        for v in &report.violations {
            let faces: Vec<u32> = v.faces.iter().map(|f| f.0).collect();
            println!("  {:?}: {} (faces {:?})", v.axiom, v.detail, faces);
        }
    }
}

fn witness_line(w: &MapWitness) -> String {
    match w {
        MapWitness::CoverBroken { low, high } => {
            format!("images of incident faces {low} < {high} are not incident")
        }
        MapWitness::RankChanged { face } => format!("face {face} changes rank"),
        MapWitness::Missed { face } => format!("target face {face} has no preimage"),
        MapWitness::FlagCollapse { flag_a, flag_b, label } => {
            format!("{label}-adjacent flags {flag_a} and {flag_b} collapse")
        }
    }
}

fn print_classification(map: &ComplexMap) {
    let class = classify(map);
    println!("kind: {}", class.kind());
    println!("homomorphism: {}", class.homomorphism);
    println!("rank_preserving: {}", class.rank_preserving);
    println!("same_rank: {}", class.same_rank);
    println!("surjective: {}", class.surjective);
    println!("strictly_adjacent: {}", class.strictly_adjacent);
    if !class.witnesses.is_empty() {
        println!("witnesses:");
        for w in &class.witnesses {
            println!("  {}", witness_line(w));
        }
    }
}

fn print_induced(ind: &InducedCovering) {
    println!("source f: {:?}", ind.source_power.complex().f_vector());
    println!("target f: {:?}", ind.target_power.complex().f_vector());
    let fibers = vertex_fiber_sizes(&ind.map);
    if fibers.iter().all(|&s| s == fibers[0]) && !fibers.is_empty() {
        println!("vertex fibers: {} x {}", fibers.len(), fibers[0]);
    } else {
        println!("vertex fibers: {fibers:?}");
    }
    print_classification(&ind.map);
}

fn build_power(c: &IncidenceComplex, n: u16, cap: usize) -> Result<PowerComplex, Failure> {
    Ok(power_complex_capped(c, n, cap)?)
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Gen {
            name,
            params,
            format,
        } => {
            let key = CatalogKey::from_name_params(&name, &params)
                .map_err(|e| Failure::BadInput(e.to_string()))?;
            let c = generate(&key).map_err(|e| Failure::BadInput(e.to_string()))?;
            emit_complex(&c, format);
        }
        Cmd::Validate { input } => {
            let j = parse_json(&read_input(&input)?)?;
            let p = poset_from_json(&j)?;
            let report = validate(&p).map_err(|e| Failure::BadInput(e.to_string()))?;
            print_report(&report);
            if !report.is_complex {
                return Err(Failure::Invalid("axioms fail".into()));
            }
        }
        Cmd::Power {
            input,
            n,
            cap,
            with_faces,
            format,
        } => {
            let c = load_complex(&input)?;
            let p = build_power(&c, n, cap)?;
            if with_faces {
                if format == Format::Dot {
                    return Err(Failure::BadInput(
                        "--with-faces only emits the JSON envelope".into(),
                    ));
                }
                let envelope = power_to_json(&p);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&envelope)
                        .expect("serialization of plain data cannot fail")
                );
            } else {
                emit_complex(p.complex(), format);
            }
        }
        Cmd::Skeleton {
            input,
            rank,
            format,
        } => {
            let c = load_complex(&input)?;
            let s = skeleton(&c, rank)?;
            emit_complex(&s, format);
        }
        Cmd::Section {
            input,
            low,
            high,
            format,
        } => {
            let c = load_complex(&input)?;
            let s = c
                .section(FaceId(low), FaceId(high))
                .map_err(complex_failure)?;
            emit_complex(&s, format);
        }
        Cmd::Aut { input } => {
            let c = load_complex(&input)?;
            let g = automorphism_group(&c)?;
            println!("order: {}", g.order());
            println!("generators: {}", g.generators().len());
            for gen in g.generators() {
                println!("  {gen}");
            }
        }
        Cmd::Regular { input } => {
            let c = load_complex(&input)?;
            let g = automorphism_group(&c)?;
            let orbits = flag_orbit_count(&c, &g);
            println!("flag orbits: {orbits}");
            println!("regular: {}", orbits == 1);
        }
        Cmd::Classify {
            source,
            target,
            map,
        } => {
            let src = Arc::new(load_complex(&source)?);
            let tgt = Arc::new(load_complex(&target)?);
            let images: Vec<u32> = array_arg(&map)?;
            let m = ComplexMap::new(src, tgt, images.into_iter().map(FaceId).collect())?;
            print_classification(&m);
        }
        Cmd::CoverF {
            source,
            target,
            gamma,
            n,
            f,
        } => {
            let gamma = load_map(&source, &target, &gamma)?;
            let images: Vec<u16> = array_arg(&f)?;
            let m = images.iter().copied().max().unwrap_or(0);
            let f = ValueMap::new(n, m, images)?;
            let ind = induced_covering_f(&gamma, n, &f)?;
            print_induced(&ind);
        }
        Cmd::CoverG {
            source,
            target,
            gamma,
            n,
            g,
        } => {
            let gamma = load_map(&source, &target, &gamma)?;
            let images: Vec<u16> = array_arg(&g)?;
            let m = images.iter().copied().max().unwrap_or(0);
            let l = block_size(n, images.len())?;
            let g = BlockValueMap::new(n, l, m, images)?;
            let ind = induced_covering_g(&gamma, n, &g)?;
            print_induced(&ind);
        }
        Cmd::Quotient {
            input,
            sigma,
            format,
        } => {
            let c = Arc::new(load_complex(&input)?);
            let mut gens = Vec::with_capacity(sigma.len());
            for s in &sigma {
                gens.push(Perm::parse_cycles(c.face_count(), s)?);
            }
            let group = PermGroup::from_generators(c.face_count(), gens)?;
            let out =
                quotient(&c, &group).map_err(|e| Failure::BadInput(e.to_string()))?;
            eprintln!("orbits: {}", out.orbits.len());
            match (&out.complex, &out.projection) {
                (Some(q), Some(proj)) => {
                    eprintln!("is_complex: true");
                    eprintln!("projection: {}", classify(proj).kind());
                    emit_complex(q, format);
                }
                _ => {
                    eprintln!("is_complex: false ({})", summarize(&out.report));
                    println!("{}", to_json_string(&poset_to_json(&out.poset)));
                    return Err(Failure::Invalid("quotient fails the axioms".into()));
                }
            }
        }
        Cmd::Invariants { input } => {
            let c = load_complex(&input)?;
            println!("rank: {}", c.rank());
            println!("f: {:?}", c.f_vector());
            println!("c: {:?}", c.c_vector());
            println!("vertex_describable: {}", c.is_vertex_describable());
        }
        Cmd::MapGenus { input } => {
            let c = load_complex(&input)?;
            let info = surface_info(&c)?;
            let [v, e, f] = info.f_vector;
            println!("V={v} E={e} F={f}");
            println!("chi: {}", info.euler);
            println!("orientable: {}", info.orientable);
            if let Some(g) = info.genus {
                println!("genus: {g}");
            }
            if let Some(k) = info.crosscap {
                println!("crosscap: {k}");
            }
        }
    }
    Ok(())
}

fn load_map(source: &str, target: &str, images: &str) -> Result<ComplexMap, Failure> {
    let src = Arc::new(load_complex(source)?);
    let tgt = Arc::new(load_complex(target)?);
    let images: Vec<u32> = array_arg(images)?;
    Ok(ComplexMap::new(
        src,
        tgt,
        images.into_iter().map(FaceId).collect(),
    )?)
}

/// Solves `n^l = count` for the block length `l` of a `g` argument.
fn block_size(n: u16, count: usize) -> Result<u32, Failure> {
    let mut l = 0u32;
    let mut total = 1usize;
    while total < count {
        total = total
            .checked_mul(n as usize)
            .ok_or_else(|| Failure::BadInput("block map too large".into()))?;
        l += 1;
    }
    if total != count || l == 0 {
        return Err(Failure::BadInput(format!(
            "g needs n^l entries for some l >= 1, got {count} at n = {n}"
        )));
    }
    Ok(l)
}
