//! Static SVG rendering of a region map.

use std::fmt::Write;

use isoperim::extremals::{Family, RegionMap};

const SIZE: f64 = 560.0;
const MARGIN: f64 = 60.0;

fn color(f: Option<Family>) -> &'static str {
    match f {
        Some(Family::E1) => "#4e79a7",
        Some(Family::E2) => "#f28e2b",
        Some(Family::E3) => "#59a14f",
        Some(Family::E4) => "#e15759",
        Some(_) => "#b07aa1",
        None => "#ffffff",
    }
}

/// Plot coordinates: `p ∈ [0, 1/2]` across, `λ ∈ [0, 1]` upwards.
fn px(p: f64) -> f64 {
    MARGIN + 2.0 * p * SIZE
}

fn py(l: f64) -> f64 {
    MARGIN + (1.0 - l) * SIZE
}

fn polyline(out: &mut String, points: impl Iterator<Item = (f64, f64)>, dash: bool) {
    let pts: Vec<String> = points.map(|(p, l)| format!("{:.2},{:.2}", px(p), py(l))).collect();
    if pts.len() < 2 {
        return;
    }
    let dash = if dash { " stroke-dasharray=\"6 4\"" } else { "" };
    let _ = writeln!(
        out,
        "<polyline fill=\"none\" stroke=\"#000\" stroke-width=\"1.5\"{dash} points=\"{}\"/>",
        pts.join(" ")
    );
}

pub fn region_map_svg(map: &RegionMap, title: &str) -> String {
    let n = map.grid_n;
    let w = 2.0 * MARGIN + SIZE;
    let mut s = String::new();
    let _ = writeln!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{w}\" viewBox=\"0 0 {w} {w}\">");
    let _ = writeln!(s, "<rect width=\"{w}\" height=\"{w}\" fill=\"#fff\"/>");

    // One rectangle per run of equal labels in a column.
    let cw = SIZE / n as f64;
    for i in 0..=n {
        let mut j = 0;
        while j <= n {
            let f = map.cell(i, j).winner;
            let start = j;
            while j <= n && map.cell(i, j).winner == f {
                j += 1;
            }
            if f.is_none() {
                continue;
            }
            let x = px(i as f64 / (2 * n) as f64) - 0.5 * cw;
            let y = py((j - 1) as f64 / n as f64) - 0.5 * cw;
            let h = (j - start) as f64 * cw;
            let _ = writeln!(
                s,
                "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{:.2}\" height=\"{h:.2}\" fill=\"{}\"/>",
                cw + 0.05,
                color(f)
            );
        }
    }

    polyline(&mut s, map.lambda0.iter().copied(), false);
    polyline(&mut s, map.p0.iter().map(|&(l, p)| (p, l)), false);
    polyline(&mut s, map.e1_e2.iter().copied(), true);

    // Axes and labels.
    let _ = writeln!(
        s,
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"none\" stroke=\"#000\"/>"
    );
    for k in 0..=5 {
        let p = 0.1 * k as f64;
        let l = 0.2 * k as f64;
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{p:.1}</text>",
            px(p),
            MARGIN + SIZE + 18.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{l:.1}</text>",
            MARGIN - 6.0,
            py(l) + 4.0
        );
    }
    let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">p</text>", MARGIN + SIZE / 2.0, w - 14.0);
    let _ = writeln!(s, "<text x=\"16\" y=\"{:.2}\" font-size=\"14\">λ</text>", MARGIN + SIZE / 2.0);
    let _ = writeln!(s, "<text x=\"{MARGIN}\" y=\"30\" font-size=\"14\">{title}</text>");
    for (k, f) in [Family::E1, Family::E2, Family::E3, Family::E4].into_iter().enumerate() {
        let x = MARGIN + SIZE - 240.0 + 60.0 * k as f64;
        let _ = writeln!(s, "<rect x=\"{x:.2}\" y=\"20\" width=\"12\" height=\"12\" fill=\"{}\"/>", color(Some(f)));
        let _ = writeln!(s, "<text x=\"{:.2}\" y=\"31\" font-size=\"12\">{f}</text>", x + 16.0);
    }
    s.push_str("</svg>\n");
    s
}
