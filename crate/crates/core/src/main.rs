use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use homotopy3::bisimp::{binerve_capped, check_length_bound, codiagonal, diagonal};
use homotopy3::catalog;
use homotopy3::error::{Error, Result, Violation};
use homotopy3::grp::{iso_check, FinGroup, Group};
use homotopy3::json::{
    from_value, group_json, schema_of, BisimpJson, GroupRef, HomotopyJson, SimpJson, SqComplexJson, X2Json,
    XmodJson, XncubeJson, XsqJson,
};
use homotopy3::simp::{homotopy_group, moore, TruncatedSimplicialGroup, DEFAULT_LEVEL_CAP};
use homotopy3::x2mod::{
    compare_2cm, from_simplicial, homotopy_groups_2cm, mapping_cone, peiffer_search, search_squares,
    trivial_2crossed, TwoCrossedModule,
};
use homotopy3::xmod::CrossedModule;
use homotopy3::xsq::{CrossedNCube, CrossedSquare, SquaredComplex};

#[derive(Parser)]
#[command(name = "homotopy3", version, about = "Crossed squares, 2-crossed modules and simplicial groups over finite groups")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest level or cell order to enumerate.
    #[arg(long, global = true, env = "HOMOTOPY3_MAX_ORDER", default_value_t = DEFAULT_LEVEL_CAP)]
    max_order: u128,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the verifier for a builtin name or a JSON file.
    Verify {
        source: String,
        #[arg(long)]
        kind: Option<Kind>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Build a 2-crossed module from a square and report its homotopy groups.
    Pipeline {
        square: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Via::Cone)]
        via: Via,
        /// Also build the other routes and compare.
        #[arg(long)]
        compare: bool,
    },
    /// List and check the builtin structures.
    Catalog,
    #[command(subcommand)]
    Simp(SimpCmd),
    #[command(subcommand)]
    Bisimp(BisimpCmd),
    #[command(subcommand)]
    X2(X2Cmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Group,
    Xmod,
    Xsq,
    Ncube,
    Sqcomplex,
    Simp,
    X2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    Nabla,
    Diag,
    Cone,
}

impl Via {
    fn name(self) -> &'static str {
        match self {
            Via::Nabla => "nabla",
            Via::Diag => "diag",
            Via::Cone => "cone",
        }
    }
}

#[derive(Args)]
struct SimpSource {
    /// Fixture name such as `nerve/a3-s3`, or a `simp.v1` file.
    source: String,
    #[arg(long, default_value_t = 3)]
    depth: usize,
}

#[derive(Subcommand)]
enum SimpCmd {
    /// Check the simplicial identities.
    Verify(SimpSource),
    /// Moore complex orders and boundary images.
    Moore(SimpSource),
    /// The homotopy group `π_n`.
    Pi {
        #[arg(short = 'n')]
        n: usize,
        #[command(flatten)]
        src: SimpSource,
    },
    /// Print the structure as `simp.v1`.
    Export(SimpSource),
}

#[derive(Args)]
struct SquareSource {
    /// Builtin square name or an `xsq.v1` file.
    square: String,
    #[arg(long, default_value_t = 3)]
    depth: usize,
}

#[derive(Subcommand)]
enum BisimpCmd {
    /// Binerve cell orders, with operator tables up to `--tables`.
    Binerve {
        #[command(flatten)]
        src: SquareSource,
        #[arg(long, default_value_t = 1)]
        tables: usize,
    },
    /// The codiagonal of the binerve.
    Nabla(SquareSource),
    /// The diagonal of the binerve.
    Diag(SquareSource),
    /// Check the Moore length hypotheses and the bound on the codiagonal.
    CheckLength {
        #[command(flatten)]
        src: SquareSource,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum X2Cmd {
    /// The mapping cone of a square, printed as `x2mod.v1` under `--json`.
    Cone { square: String },
    /// Verify a 2-crossed module: `cone/<square>`, `nabla/<square>`,
    /// `diag/<square>`, `trivial/<group>` or an `x2mod.v1` file.
    Verify {
        source: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// `π₀, π₁, π₂` of a 2-crossed module.
    Pi {
        source: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Search for an isomorphism of 2-crossed modules.
    Compare {
        a: String,
        b: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Rerun the Peiffer lifting search on the square catalog.
    Search,
}

#[derive(Serialize)]
struct Component {
    name: String,
    order: String,
}

#[derive(Serialize)]
struct AxiomResult {
    structure: String,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<Violation>,
}

#[derive(Serialize)]
struct ErrorJson {
    message: String,
    exit_code: i32,
}

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    command: Vec<String>,
    ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    components: Vec<Component>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    axioms: Vec<AxiomResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    homotopy: Vec<HomotopyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorJson>,
    timing_ms: u128,
}

impl Report {
    fn new() -> Self {
        Report {
            schema: "report.v1",
            command: std::env::args().skip(1).collect(),
            ok: true,
            components: Vec::new(),
            axioms: Vec::new(),
            homotopy: Vec::new(),
            data: None,
            error: None,
            timing_ms: 0,
        }
    }

    fn comp(&mut self, name: &str, order: impl ToString) {
        self.components.push(Component {
            name: name.to_string(),
            order: order.to_string(),
        });
    }

    fn passed(&mut self, structure: &str) {
        self.axioms.push(AxiomResult {
            structure: structure.into(),
            passed: true,
            violation: None,
        });
    }

    fn exit_code(&self) -> i32 {
        match &self.error {
            Some(e) => e.exit_code,
            None if !self.ok => 1,
            None => 0,
        }
    }

    /// Records an error; a violated axiom goes into `axioms` with its
    /// witnesses.
    fn fail(&mut self, e: Error) {
        self.ok = false;
        if let Error::Axiom(v) = &e {
            self.axioms.push(AxiomResult {
                structure: v.structure.clone(),
                passed: false,
                violation: Some(v.clone()),
            });
        }
        self.error = Some(ErrorJson {
            message: e.to_string(),
            exit_code: e.exit_code(),
        });
    }
}

fn inline(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(a) => a.iter().all(inline),
        _ => true,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if inline(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(x, indent + 1, out);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if let Some(line) = flat_object(x) {
                    out.push_str(&format!("{pad}- {line}\n"));
                } else if inline(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, indent + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar(x))),
    }
}

/// `k: v, …` for an object whose values are all inline.
fn flat_object(v: &Value) -> Option<String> {
    let m = v.as_object()?;
    m.values()
        .all(inline)
        .then(|| m.iter().map(|(k, x)| format!("{k}: {}", scalar(x))).collect::<Vec<_>>().join(", "))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        x => x.to_string(),
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn is_file(s: &str) -> bool {
    Path::new(s).is_file()
}

fn load_square(src: &str) -> Result<CrossedSquare> {
    if is_file(src) {
        from_value::<XsqJson>(read_json(Path::new(src))?)?.build()
    } else {
        catalog::square(src)
    }
}

fn load_simp(src: &SimpSource, cap: u128) -> Result<TruncatedSimplicialGroup> {
    if is_file(&src.source) {
        from_value::<SimpJson>(read_json(Path::new(&src.source))?)?.build()
    } else {
        catalog::simplicial(&src.source, src.depth, cap)
    }
}

fn load_x2(src: &str, depth: usize, cap: u128) -> Result<TwoCrossedModule> {
    if is_file(src) {
        return from_value::<X2Json>(read_json(Path::new(src))?)?.build();
    }
    let (kind, name) = src
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("expected cone/, nabla/, diag/ or trivial/ before {src:?}")))?;
    match kind {
        "trivial" => trivial_2crossed(&catalog::group(name)?),
        "cone" | "nabla" | "diag" => route(&catalog::square(name)?, kind, depth, cap),
        _ => Err(Error::Parse(format!("unknown 2-crossed source {src:?}"))),
    }
}

fn route(sq: &CrossedSquare, via: &str, depth: usize, cap: u128) -> Result<TwoCrossedModule> {
    match via {
        "cone" => mapping_cone(sq),
        "nabla" => from_simplicial(&codiagonal(&binerve_capped(sq, depth, cap)?, depth)?),
        _ => from_simplicial(&diagonal(&binerve_capped(sq, depth, cap)?, depth)?),
    }
}

fn group_summary(r: &mut Report, name: &str, g: &FinGroup) {
    r.comp(name, g.order());
}

fn x2_summary(r: &mut Report, t: &TwoCrossedModule) {
    group_summary(r, "L", &t.l);
    group_summary(r, "M", &t.m);
    group_summary(r, "N", &t.n);
}

fn simp_summary(r: &mut Report, g: &TruncatedSimplicialGroup) {
    for (n, l) in g.levels.iter().enumerate() {
        r.comp(&format!("G{n}"), l.order());
    }
    if let Some(c) = &g.cap {
        let n = g.levels.len();
        r.comp(&format!("G{n}"), c.full_order.map_or("capped".to_string(), |o| o.to_string()));
    }
}

fn pis(t: &TwoCrossedModule) -> Result<Vec<HomotopyJson>> {
    Ok(homotopy_groups_2cm(t)?.iter().map(HomotopyJson::of).collect())
}

enum Loaded {
    Group(Group),
    Xmod(CrossedModule),
    Square(CrossedSquare),
    Cube(CrossedNCube),
    SqComplex(SquaredComplex),
    Simp(TruncatedSimplicialGroup),
    X2(TwoCrossedModule),
}

fn kind_of_schema(s: &str) -> Option<Kind> {
    Some(match s {
        "fingroup.v1" => Kind::Group,
        "xmod.v1" => Kind::Xmod,
        "xsq.v1" => Kind::Xsq,
        "xncube.v1" => Kind::Ncube,
        "sqcomplex.v1" => Kind::Sqcomplex,
        "simp.v1" => Kind::Simp,
        "x2mod.v1" => Kind::X2,
        _ => return None,
    })
}

fn kind_of_name(s: &str) -> Option<Kind> {
    if catalog::GROUPS.contains(&s) {
        Some(Kind::Group)
    } else if catalog::CROSSED_MODULES.contains(&s) {
        Some(Kind::Xmod)
    } else if catalog::all_squares().any(|x| x == s) {
        Some(Kind::Xsq)
    } else if catalog::CUBES.contains(&s) {
        Some(Kind::Ncube)
    } else if ["constant/", "nerve/"].iter().any(|p| s.starts_with(p)) {
        Some(Kind::Simp)
    } else if ["cone/", "trivial/"].iter().any(|p| s.starts_with(p)) {
        Some(Kind::X2)
    } else {
        None
    }
}

fn load(source: &str, kind: Option<Kind>, depth: usize, cap: u128) -> Result<Loaded> {
    if is_file(source) {
        let v = read_json(Path::new(source))?;
        let kind = match kind {
            Some(k) => k,
            None => schema_of(&v)
                .and_then(kind_of_schema)
                .ok_or_else(|| Error::Parse("missing or unknown \"schema\"; pass --kind".into()))?,
        };
        return Ok(match kind {
            Kind::Group => Loaded::Group(from_value::<GroupRef>(v)?.resolve()?),
            Kind::Xmod => Loaded::Xmod(from_value::<XmodJson>(v)?.build()?),
            Kind::Xsq => Loaded::Square(from_value::<XsqJson>(v)?.build()?),
            Kind::Ncube => Loaded::Cube(from_value::<XncubeJson>(v)?.build()?),
            Kind::Sqcomplex => Loaded::SqComplex(from_value::<SqComplexJson>(v)?.build()?),
            Kind::Simp => Loaded::Simp(from_value::<SimpJson>(v)?.build()?),
            Kind::X2 => Loaded::X2(from_value::<X2Json>(v)?.build()?),
        });
    }
    let kind = kind
        .or_else(|| kind_of_name(source))
        .ok_or_else(|| Error::Parse(format!("{source:?} is neither a file nor a builtin name")))?;
    Ok(match kind {
        Kind::Group => Loaded::Group(catalog::group(source)?),
        Kind::Xmod => Loaded::Xmod(catalog::crossed_module(source)?),
        Kind::Xsq => Loaded::Square(catalog::square(source)?),
        Kind::Ncube => Loaded::Cube(catalog::cube(source)?),
        Kind::Sqcomplex => return Err(Error::Parse("squared complexes are read from sqcomplex.v1 files".into())),
        Kind::Simp => {
            let g = catalog::simplicial(source, depth, cap)?;
            g.validate()?;
            Loaded::Simp(g)
        }
        Kind::X2 => Loaded::X2(load_x2(source, depth, cap)?),
    })
}

fn cmd_verify(r: &mut Report, source: &str, kind: Option<Kind>, depth: usize, cap: u128) -> Result<()> {
    match load(source, kind, depth, cap)? {
        Loaded::Group(g) => {
            group_summary(r, "G", &g);
            r.passed("group");
            r.data = Some(json!({ "abelian": g.is_abelian(), "group": fingroup_json(&g) }));
        }
        Loaded::Xmod(c) => {
            group_summary(r, "M", &c.m);
            group_summary(r, "P", &c.p);
            r.passed("crossed module");
        }
        Loaded::Square(s) => {
            for (n, g) in [("L", &s.l), ("M", &s.m), ("N", &s.n), ("P", &s.p)] {
                group_summary(r, n, g);
            }
            r.passed("crossed square");
        }
        Loaded::Cube(c) => {
            for (a, g) in c.groups.iter().enumerate() {
                group_summary(r, &format!("M{a:0w$b}", w = c.n), g);
            }
            r.passed("crossed n-cube");
        }
        Loaded::SqComplex(c) => {
            group_summary(r, "L", &c.square.l);
            for (i, g) in c.tail.groups.iter().enumerate() {
                group_summary(r, &format!("C{}", i + 3), g);
            }
            r.passed("squared complex");
        }
        Loaded::Simp(g) => {
            simp_summary(r, &g);
            r.passed("simplicial group");
        }
        Loaded::X2(t) => {
            x2_summary(r, &t);
            r.passed("2-crossed module");
            r.homotopy = pis(&t)?;
        }
    }
    Ok(())
}

fn same_pis(a: &[HomotopyJson], b: &[HomotopyJson], ga: &TwoCrossedModule, gb: &TwoCrossedModule) -> Result<bool> {
    if a != b {
        return Ok(false);
    }
    let (pa, pb) = (homotopy_groups_2cm(ga)?, homotopy_groups_2cm(gb)?);
    for (x, y) in pa.iter().zip(&pb) {
        if iso_check(&x.group, &y.group)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn cmd_pipeline(r: &mut Report, square: &str, depth: usize, via: Via, compare: bool, cap: u128) -> Result<()> {
    let sq = load_square(square)?;
    let t = route(&sq, via.name(), depth, cap)?;
    x2_summary(r, &t);
    r.passed("2-crossed module");
    r.homotopy = pis(&t)?;
    if compare {
        let mut rows = Vec::new();
        for other in [Via::Cone, Via::Nabla, Via::Diag] {
            if other == via {
                continue;
            }
            let u = route(&sq, other.name(), depth, cap)?;
            let agree = same_pis(&r.homotopy, &pis(&u)?, &t, &u)?;
            let iso = if matches!((via, other), (Via::Cone, Via::Nabla) | (Via::Nabla, Via::Cone)) {
                Some(compare_2cm(&t, &u)?.is_some())
            } else {
                None
            };
            r.ok &= agree;
            rows.push(json!({ "with": other.name(), "homotopy_agrees": agree, "isomorphic": iso }));
        }
        r.data = Some(json!({ "compare": rows }));
    }
    Ok(())
}

fn cmd_catalog(r: &mut Report, cap: u128) -> Result<()> {
    let mut groups = Vec::new();
    for n in catalog::GROUPS {
        let g = catalog::group(n)?;
        groups.push(json!({ "name": n, "order": g.order(), "abelian": g.is_abelian() }));
    }
    let mut xmods = Vec::new();
    for n in catalog::CROSSED_MODULES {
        let c = catalog::crossed_module(n)?;
        xmods.push(json!({ "name": n, "M": c.m.order(), "P": c.p.order() }));
    }
    let mut squares = Vec::new();
    for n in catalog::all_squares() {
        let s = catalog::square(n)?;
        let wide = catalog::WIDE_SQUARES.contains(&n);
        squares.push(json!({ "name": n, "L": s.l.order(), "M": s.m.order(), "N": s.n.order(), "P": s.p.order(), "wide": wide }));
    }
    let mut cubes = Vec::new();
    for n in catalog::CUBES {
        let c = catalog::cube(n)?;
        cubes.push(json!({ "name": n, "n": c.n, "orders": c.groups.iter().map(|g| g.order()).collect::<Vec<_>>() }));
    }
    let mut simp = Vec::new();
    for n in catalog::SIMPLICIAL {
        let g = catalog::simplicial(n, 2, cap)?;
        g.validate()?;
        simp.push(json!({ "name": n, "orders": g.levels.iter().map(|l| l.order()).collect::<Vec<_>>() }));
    }
    r.passed("catalog");
    r.data = Some(json!({
        "groups": groups,
        "crossed_modules": xmods,
        "squares": squares,
        "cubes": cubes,
        "simplicial": simp,
    }));
    Ok(())
}

fn cmd_simp(r: &mut Report, c: SimpCmd, cap: u128) -> Result<()> {
    match c {
        SimpCmd::Verify(s) => {
            let g = load_simp(&s, cap)?;
            g.validate()?;
            simp_summary(r, &g);
            r.passed("simplicial group");
        }
        SimpCmd::Moore(s) => {
            let g = load_simp(&s, cap)?;
            let nc = moore(&g);
            simp_summary(r, &g);
            let images: Vec<usize> = (0..nc.depth()).map(|n| nc.boundary_image(n).len()).collect();
            r.data = Some(json!({ "moore_orders": nc.orders, "boundary_image_orders": images, "length": nc.length() }));
        }
        SimpCmd::Pi { n, src } => {
            let g = load_simp(&src, cap)?;
            simp_summary(r, &g);
            r.homotopy = vec![HomotopyJson::of(&homotopy_group(&g, n)?)];
        }
        SimpCmd::Export(s) => {
            let g = load_simp(&s, cap)?;
            simp_summary(r, &g);
            r.data = Some(serde_json::to_value(SimpJson::of(&g)?).expect("serializable"));
        }
    }
    Ok(())
}

fn nabla_like(r: &mut Report, g: &TruncatedSimplicialGroup) -> Result<()> {
    simp_summary(r, g);
    let nc = moore(g);
    r.data = Some(json!({ "moore_orders": nc.orders }));
    for n in 0..g.depth().min(3) {
        r.homotopy.push(HomotopyJson::of(&homotopy_group(g, n)?));
    }
    Ok(())
}

fn cmd_bisimp(r: &mut Report, c: BisimpCmd, cap: u128) -> Result<()> {
    match c {
        BisimpCmd::Binerve { src, tables } => {
            let x = binerve_capped(&load_square(&src.square)?, src.depth, cap)?;
            r.passed("bisimplicial group");
            r.data = Some(serde_json::to_value(BisimpJson::of(&x, tables)?).expect("serializable"));
        }
        BisimpCmd::Nabla(src) => {
            let x = binerve_capped(&load_square(&src.square)?, src.depth, cap)?;
            nabla_like(r, &codiagonal(&x, src.depth)?)?;
        }
        BisimpCmd::Diag(src) => {
            let x = binerve_capped(&load_square(&src.square)?, src.depth, cap)?;
            nabla_like(r, &diagonal(&x, src.depth)?)?;
        }
        BisimpCmd::CheckLength { src, m } => {
            let x = binerve_capped(&load_square(&src.square)?, src.depth, cap)?;
            let rep = check_length_bound(&x, m)?;
            r.ok = rep.holds;
            r.data = Some(serde_json::to_value(rep).expect("serializable"));
        }
    }
    Ok(())
}

fn cmd_x2(r: &mut Report, c: X2Cmd, cap: u128) -> Result<()> {
    match c {
        X2Cmd::Cone { square } => {
            let t = mapping_cone(&load_square(&square)?)?;
            x2_summary(r, &t);
            r.passed("2-crossed module");
            r.homotopy = pis(&t)?;
            r.data = Some(serde_json::to_value(X2Json::of(&t)).expect("serializable"));
        }
        X2Cmd::Verify { source, depth } => {
            let t = load_x2(&source, depth, cap)?;
            x2_summary(r, &t);
            r.passed("2-crossed module");
        }
        X2Cmd::Pi { source, depth } => {
            let t = load_x2(&source, depth, cap)?;
            x2_summary(r, &t);
            r.homotopy = pis(&t)?;
        }
        X2Cmd::Compare { a, b, depth } => {
            let (ta, tb) = (load_x2(&a, depth, cap)?, load_x2(&b, depth, cap)?);
            let data = match compare_2cm(&ta, &tb)? {
                Some(w) => json!({ "isomorphic": true, "f2": w.f2.map, "f1": w.f1.map, "f0": w.f0.map }),
                None => json!({ "isomorphic": false }),
            };
            r.data = Some(data);
        }
        X2Cmd::Search => {
            let s = peiffer_search(&search_squares()?);
            r.ok = !s.fallback;
            r.data = Some(serde_json::to_value(s).expect("serializable"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut r = Report::new();
    let cap = cli.max_order;
    let res = match cli.cmd {
        Cmd::Verify { source, kind, depth } => cmd_verify(&mut r, &source, kind, depth, cap),
        Cmd::Pipeline {
            square,
            depth,
            via,
            compare,
        } => cmd_pipeline(&mut r, &square, depth, via, compare, cap),
        Cmd::Catalog => cmd_catalog(&mut r, cap),
        Cmd::Simp(c) => cmd_simp(&mut r, c, cap),
        Cmd::Bisimp(c) => cmd_bisimp(&mut r, c, cap),
        Cmd::X2(c) => cmd_x2(&mut r, c, cap),
    };
    if let Err(e) = res {
        r.fail(e);
    }
    r.timing_ms = start.elapsed().as_millis();
    let v = serde_json::to_value(&r).expect("serializable");
    let text = if cli.json {
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    } else {
        let mut out = String::new();
        render_text(&v, 0, &mut out);
        out
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().write_all(text.as_bytes());
    ExitCode::from(r.exit_code() as u8)
}

fn fingroup_json(g: &FinGroup) -> Value {
    let mut j = group_json(g);
    j.schema = Some("fingroup.v1".into());
    serde_json::to_value(j).expect("serializable")
}
