use std::fmt::Write as _;
use std::fs;
use std::net::{IpAddr, SocketAddr};
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use quiverlab::barcode::stable_barcode;
use quiverlab::character::{char_frieze, char_injective, char_projective};
use quiverlab::mgs::{find_mgs, MgsBudget, MgsError};
use quiverlab::repmod::{ModuleLiteral, TypeAQuiver};
use quiverlab::seed::{exchange_graph_with, Budget, NodeIdentity, Seed, SeedError};
use quiverlab::silting::{compatibility_graph, complete_almost, silting_pairs, SiltingPair};
use quiverlab::stability::{chamber_of, chambers as all_chambers, render_svg, ChamberHit, SvgOptions};
use quiverlab::{LaurentPoly, Quiver, RenderMode};

use crate::input::Input;
use crate::Failure;

fn type_a(q: &Quiver) -> Result<TypeAQuiver, Failure> {
    TypeAQuiver::new(q).map_err(Failure::domain)
}

fn emit(path: &Path, text: &str, out: &mut String) -> Result<(), Failure> {
    if path == Path::new("-") {
        out.push_str(text);
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
    }
}

fn render(p: &LaurentPoly, flat: bool) -> String {
    p.render(if flat { RenderMode::Flat } else { RenderMode::Fraction })
}

pub fn mutate(input: &Input, at: &[usize]) -> Result<String, Failure> {
    let mut b = input.quiver.exchange_matrix();
    for &k in at {
        b = b.mutate(k).map_err(Failure::domain)?;
    }
    let json = if input.matrix {
        serde_json::to_string(b.rows())
    } else {
        serde_json::to_string(&b.to_quiver().to_json())
    };
    Ok(json.expect("plain data serializes") + "\n")
}

pub fn seed_walk(input: &Input, at: &[usize], flat: bool) -> Result<String, Failure> {
    let seed = Seed::initial(&input.quiver)
        .mutate_path(at)
        .map_err(Failure::domain)?;
    Ok(seed.cluster().iter().map(|p| render(p, flat) + "\n").collect())
}

pub fn exchange_graph(
    input: &Input,
    max_nodes: usize,
    max_depth: usize,
    labeled: bool,
    dot: Option<&Path>,
) -> Result<String, Failure> {
    let identity = if labeled {
        NodeIdentity::Labeled
    } else {
        NodeIdentity::Cluster
    };
    let budget = Budget { max_nodes, max_depth };
    let g = match exchange_graph_with(&input.quiver, budget, identity) {
        Ok(g) => g,
        Err(SeedError::BudgetExceeded(partial)) => {
            return Err(Failure::Domain(format!(
                "budget exhausted after {} seeds and {} variables",
                partial.node_count(),
                partial.variable_count()
            )))
        }
        Err(e) => return Err(Failure::domain(e)),
    };
    let mut out = format!(
        "seeds: {}\nvariables: {}\nedges: {}\n",
        g.node_count(),
        g.variable_count(),
        g.edges.len()
    );
    if let Some(path) = dot {
        emit(path, &g.to_dot(), &mut out)?;
    }
    Ok(out)
}

pub fn character(input: &Input, module: Option<&str>, table: bool, flat: bool) -> Result<String, Failure> {
    let q = &input.quiver;
    if table {
        let t = char_frieze(&type_a(q)?).map_err(Failure::domain)?;
        let map: serde_json::Map<String, serde_json::Value> = t
            .entries
            .iter()
            .map(|(m, p)| (m.to_string(), render(p, flat).into()))
            .collect();
        return Ok(serde_json::to_string_pretty(&map).expect("strings serialize") + "\n");
    }
    let text = module.ok_or_else(|| Failure::Usage("--module or --table is required".into()))?;
    let lit = ModuleLiteral::from_str(text).map_err(Failure::domain)?;
    let chi = match TypeAQuiver::new(q) {
        Ok(tq) => {
            let m = tq.resolve(lit).map_err(Failure::domain)?;
            char_frieze(&tq).map_err(Failure::domain)?.get(&m).map_err(Failure::domain)?.clone()
        }
        Err(_) => match lit {
            ModuleLiteral::Projective(i) => char_projective(q, i).map_err(Failure::domain)?,
            ModuleLiteral::Injective(i) => char_injective(q, i).map_err(Failure::domain)?,
            ModuleLiteral::Shifted(i) if (1..=q.n()).contains(&i) => LaurentPoly::var(q.n(), i - 1),
            _ => {
                return Err(Failure::Domain(format!(
                    "{text} needs a type-A quiver; other quivers support P[i], I[i] and P[i][1]"
                )))
            }
        },
    };
    Ok(render(&chi, flat) + "\n")
}

pub fn silting(input: &Input, tilting: bool, json: bool) -> Result<String, Failure> {
    let tq = type_a(&input.quiver)?;
    let pairs: Vec<SiltingPair> = silting_pairs(&tq)
        .map_err(Failure::domain)?
        .into_iter()
        .filter(|p| !tilting || p.shifted.is_empty())
        .collect();
    if json {
        return Ok(serde_json::to_string_pretty(&pairs).expect("pairs serialize") + "\n");
    }
    Ok(pairs.iter().map(|p| format!("{p}\n")).collect())
}

pub fn compatibility(input: &Input) -> Result<String, Failure> {
    let g = compatibility_graph(&type_a(&input.quiver)?, true).map_err(Failure::domain)?;
    Ok(serde_json::to_string_pretty(&g.to_json()).expect("graph serializes") + "\n")
}

pub fn exchange(input: &Input, pair: &str, removed: &str) -> Result<String, Failure> {
    let tq = type_a(&input.quiver)?;
    let pair = SiltingPair::parse(&tq, pair).map_err(Failure::domain)?;
    let removed = tq.parse_module(removed).map_err(Failure::domain)?;
    let ex = complete_almost(&tq, &pair, &removed).map_err(Failure::domain)?;
    let mut members: Vec<_> = pair.members().into_iter().filter(|m| *m != removed).collect();
    members.push(ex.other);
    Ok(format!("{}\n{}\n", ex.other, SiltingPair::from_members(&members)))
}

fn parse_theta(text: &str) -> Result<Vec<BigRational>, Failure> {
    text.split(',')
        .map(|p| {
            BigRational::from_str(p.trim())
                .map_err(|_| Failure::Usage(format!("`{p}` is not a rational number")))
        })
        .collect()
}

pub fn chambers(input: &Input, thetas: &[String]) -> Result<String, Failure> {
    let tq = type_a(&input.quiver)?;
    let cs = all_chambers(&tq).map_err(Failure::domain)?;
    let mut out = format!("chambers: {}\n", cs.len());
    for text in thetas {
        let theta = parse_theta(text)?;
        let hit = chamber_of(&tq, &theta).map_err(Failure::domain)?;
        let _ = match hit {
            ChamberHit::Chamber(c) => writeln!(out, "{text}: chamber {}", c.silting),
            ChamberHit::WallHit(ms) => {
                let names: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                writeln!(out, "{text}: wall {}", names.join(" "))
            }
        };
    }
    Ok(out)
}

pub fn stability_svg(input: &Input, output: Option<&Path>, labels: bool, segments: usize) -> Result<String, Failure> {
    let tq = type_a(&input.quiver)?;
    let svg = render_svg(&tq, SvgOptions { labels, segments }).map_err(Failure::domain)?;
    let mut out = String::new();
    emit(output.unwrap_or(Path::new("-")), &svg, &mut out)?;
    Ok(out)
}

pub fn mgs(input: &Input, max_depth: usize, max_states: usize, trace: bool) -> Result<String, Failure> {
    let budget = MgsBudget { max_depth, max_states };
    let (found, failure) = match find_mgs(&input.quiver.exchange_matrix(), budget) {
        Ok(found) => (found, None),
        Err(MgsError::BudgetExceeded { partial, states }) => (
            partial,
            Some(Failure::Domain(format!("search budget exhausted after {states} states"))),
        ),
        Err(e) => return Err(Failure::domain(e)),
    };
    let mut out = String::new();
    for seq in &found {
        let dirs: Vec<String> = seq.directions.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "{}", dirs.join(" "));
        if trace {
            for state in &seq.states {
                let _ = writeln!(out, "{state}");
            }
        }
    }
    match failure {
        None => Ok(out),
        Some(f) => {
            print!("{out}");
            Err(f)
        }
    }
}

pub fn barcode(dims: &str, svg: Option<&Path>) -> Result<String, Failure> {
    let dims: Vec<i64> = dims
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("`{p}` is not an integer")))
        })
        .collect::<Result<_, _>>()?;
    let b = stable_barcode(&dims).map_err(Failure::domain)?;
    let mut out = format!("{b}\n");
    if let Some(path) = svg {
        emit(path, &b.render_svg(), &mut out)?;
    }
    Ok(out)
}

pub fn serve(host: &str, port: u16, assets: Option<&Path>) -> Result<String, Failure> {
    let ip: IpAddr = host
        .parse()
        .map_err(|_| Failure::Usage(format!("`{host}` is not an IP address")))?;
    let runtime = tokio::runtime::Runtime::new().map_err(Failure::domain)?;
    runtime
        .block_on(quiverlab_explorer::serve(SocketAddr::new(ip, port), assets))
        .map_err(Failure::domain)?;
    Ok(String::new())
}
