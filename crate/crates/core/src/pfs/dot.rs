//! Graphviz export: the Hasse diagram of the multiposet, covering relations
//! only, with multiplicities >= 2 labelled and drawn with doubled pen width.

use super::build::PointedFusionSystem;

pub fn to_dot(pfs: &PointedFusionSystem) -> String {
    let n = pfs.objects.len();
    let mut s = String::from("digraph pfs {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for o in &pfs.objects {
        s.push_str(&format!("  \"{}\";\n", o.id));
    }
    for q in 0..n {
        for p in 0..n {
            if q == p || pfs.mult[q][p] == 0 {
                continue;
            }
            let covered = (0..n)
                .any(|r| r != q && r != p && pfs.mult[q][r] != 0 && pfs.mult[r][p] != 0);
            if covered {
                continue;
            }
            let m = pfs.mult[q][p];
            if m >= 2 {
                s.push_str(&format!(
                    "  \"{}\" -> \"{}\" [label=\"\u{00d7}{m}\", penwidth=2.0];\n",
                    pfs.objects[q].id, pfs.objects[p].id
                ));
            } else {
                s.push_str(&format!(
                    "  \"{}\" -> \"{}\";\n",
                    pfs.objects[q].id, pfs.objects[p].id
                ));
            }
        }
    }
    s.push_str("}\n");
    s
}
