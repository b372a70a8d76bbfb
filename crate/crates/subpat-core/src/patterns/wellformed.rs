use super::{Kind, Pattern};
use serde::{Deserialize, Serialize};

/// The five structural predicates on a pattern, all evaluated on the stored
/// graph, plus the sets behind the balanced clauses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellformednessReport {
    pub simple: bool,
    pub balanced: bool,
    pub one_alphabeted: bool,
    pub stable_superwords: bool,
    pub rooted: bool,
    /// Loop variables 𝓛.
    pub loop_vars: Vec<String>,
    /// Pairs `(x, y)` of 𝓚: `ℓ ≠ ℓ∘x = ℓ∘xy` for some `ℓ`, with `y ∈ 𝓛`.
    pub k_pairs: Vec<(String, String)>,
    pub diagnostics: Vec<String>,
}

pub fn wellformedness(p: &Pattern) -> WellformednessReport {
    let vars = p.vars();
    let nv = vars.len();
    let nodes = p.num_vertices();
    let name = |x: usize| vars.name(x).to_string();
    let mut diagnostics = Vec::new();

    // simple: without self-loops the graph is an out-tree (parallel edges
    // between the same two vertices already break this)
    let tree: Vec<_> = p.edges().iter().filter(|e| !e.is_loop()).collect();
    let mut indeg = vec![0usize; nodes];
    for e in &tree {
        indeg[e.dst] += 1;
    }
    let tree_root = (0..nodes).find(|&v| indeg[v] == 0);
    let simple = tree.len() + 1 == nodes
        && indeg.iter().filter(|&&d| d == 0).count() == 1
        && indeg.iter().all(|&d| d <= 1)
        && tree_root.is_some_and(|r| p.reaches_all(r));
    if !simple {
        diagnostics.push("simple: graph without self-loops is not a tree".to_string());
    }

    let rooted = (0..nodes).any(|r| p.reaches_all(r));
    if !rooted {
        diagnostics.push("rooted: no vertex reaches every vertex".to_string());
    }

    // 𝓛 and 𝓚
    let mut is_loop_var = vec![false; nv];
    for e in p.edges().iter().filter(|e| e.is_loop()) {
        is_loop_var[e.var] = true;
    }
    let mut k = vec![vec![false; nv]; nv];
    for e in p.edges().iter().filter(|e| !e.is_loop()) {
        for y in (0..nv).filter(|&y| is_loop_var[y]) {
            if p.target(e.dst, y) == Some(e.dst) {
                k[e.var][y] = true;
            }
        }
    }
    let k_list: Vec<(usize, usize)> =
        (0..nv).flat_map(|x| (0..nv).map(move |y| (x, y))).filter(|&(x, y)| k[x][y]).collect();

    let mut balanced = true;
    let mut violate = |clause: &str, detail: String| {
        balanced = false;
        diagnostics.push(format!("balanced ({clause}): {detail}"));
    };
    for y in (0..nv).filter(|&y| is_loop_var[y]) {
        if !(0..nv).any(|x| k[x][y]) {
            violate("i", format!("loop variable {} has no entering partner", name(y)));
        }
    }
    for x in 0..nv {
        let partners: Vec<usize> = (0..nv).filter(|&y| k[x][y]).collect();
        if partners.len() > 1 {
            violate("ii", format!("{} enters loops on several variables", name(x)));
        }
    }
    for &(x, y) in &k_list {
        for e in p.edges().iter().filter(|e| e.var == x) {
            if p.target(e.dst, y) != Some(e.dst) {
                violate(
                    "iii",
                    format!("{}∘{} lacks a {} loop", p.vertex_name(e.src), name(x), name(y)),
                );
            }
        }
    }
    for y in (0..nv).filter(|&y| is_loop_var[y]) {
        for z in (0..nv).filter(|&z| vars.leq(y, z) && !is_loop_var[z]) {
            violate("iv", format!("{} ⪯ {} but {} labels no loop", name(y), name(z), name(z)));
        }
    }
    for &(x, y) in &k_list {
        for z in (0..nv).filter(|&z| z != x && vars.leq(x, z) && !vars.leq(y, z)) {
            violate("v", format!("{} ⪯ {} but not {} ⪯ {}", name(x), name(z), name(y), name(z)));
        }
    }

    let one_alphabeted = simple && {
        let root = tree_root.expect("simple patterns have a root");
        let (j, kk) = p.compare();
        let pj = tree_path_vars(p, root, j);
        let pk = tree_path_vars(p, root, kk);
        let covered = |a: &[usize], b: &[usize]| a.iter().all(|&x| b.iter().any(|&y| vars.leq(x, y)));
        covered(&pj, &pk) && (p.kind() == Kind::Nleq || covered(&pk, &pj))
    };
    if simple && !one_alphabeted {
        diagnostics.push("one-alphabeted: a path variable has no larger partner".to_string());
    }

    let mut stable_superwords = true;
    for e in p.edges() {
        let y = e.var;
        let non_minimal = (0..nv).any(|x| x != y && vars.leq(x, y));
        if non_minimal && p.target(e.dst, y) != Some(e.dst) {
            stable_superwords = false;
            diagnostics.push(format!(
                "stable superwords: {}∘{}{} differs from {}∘{}",
                p.vertex_name(e.src),
                name(y),
                name(y),
                p.vertex_name(e.src),
                name(y)
            ));
        }
    }

    WellformednessReport {
        simple,
        balanced,
        one_alphabeted,
        stable_superwords,
        rooted,
        loop_vars: (0..nv).filter(|&y| is_loop_var[y]).map(name).collect(),
        k_pairs: k_list.iter().map(|&(x, y)| (name(x), name(y))).collect(),
        diagnostics,
    }
}

/// Variables on the loop-free tree path from `root` to `v`.
fn tree_path_vars(p: &Pattern, root: usize, mut v: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while v != root {
        let e = p
            .edges()
            .iter()
            .find(|e| !e.is_loop() && e.dst == v)
            .expect("tree vertices other than the root have a parent");
        out.push(e.var);
        v = e.src;
    }
    out
}
