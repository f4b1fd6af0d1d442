//! Plain-text Lewis diagrams.

use std::collections::BTreeMap;
use std::fmt::Write;

use zmackey::exactalg::{prime_edges, Int, IntMatrix};
use zmackey::mackey::ZModule;

fn entry(m: &IntMatrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return String::from("0");
    }
    if m.rows() == 1 && m.cols() == 1 {
        return m.get(0, 0).to_string();
    }
    let rows: Vec<String> = (0..m.rows()).map(|i| format!("[{}]", m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))).collect();
    format!("[{}]", rows.join(" "))
}

fn is_identity(m: &IntMatrix) -> bool {
    *m == IntMatrix::identity(m.rows())
}

/// Values, then restrictions, transfers and non-identity actions.
///
/// With `ambient`, every value is read as `g_d·Z ⊂ Z` and maps are
/// shown as the multipliers of the ambient `Z`.
pub fn render(m: &ZModule, title: &str, ambient: Option<&BTreeMap<u64, Int>>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} over C_{}", title, m.n);
    for d in m.divisors() {
        let v = match ambient {
            Some(g) if g[&d].is_one() => String::from("Z"),
            Some(g) => format!("{}Z", g[&d]),
            None => m.value(d).to_string(),
        };
        let _ = writeln!(out, "  Θ_{:<5} {}", d, v);
    }
    let scaled = |mat: &IntMatrix, num: u64, den: u64| -> String {
        match ambient {
            Some(g) if mat.rows() == 1 && mat.cols() == 1 => {
                let x = &(mat.get(0, 0) * &g[&num]).div_exact(&g[&den]);
                x.to_string()
            }
            _ => entry(mat),
        }
    };
    let _ = writeln!(out, "restriction");
    for (d, e, _) in prime_edges(m.n) {
        let _ = writeln!(out, "  Θ_{} -> Θ_{}: {}", d, e, scaled(m.res_matrix(d, e), e, d));
    }
    let _ = writeln!(out, "transfer");
    for (d, e, _) in prime_edges(m.n) {
        let _ = writeln!(out, "  Θ_{} -> Θ_{}: {}", e, d, scaled(m.tr_matrix(d, e), d, e));
    }
    let acts: Vec<u64> = m.divisors().into_iter().filter(|&d| !is_identity(m.act_matrix(d))).collect();
    if !acts.is_empty() {
        let _ = writeln!(out, "action");
        for d in acts {
            let _ = writeln!(out, "  Θ_{}: {}", d, entry(m.act_matrix(d)));
        }
    }
    out
}
