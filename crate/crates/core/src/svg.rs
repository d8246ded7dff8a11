//! Hand-written SVG bar charts of exact pmfs. Output depends only on the
//! input distribution, so it is stable enough for golden-file comparison.

use std::fmt::Write;

use crate::distribution::{to_f64, ExactDistribution};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const TICK_STEP: f64 = 0.05;

/// Renders one bar per value between the smallest and largest support point;
/// bar height is the probability. The y axis is ticked every 0.05.
pub fn pmf_bar_chart(dist: &ExactDistribution, title: &str) -> String {
    let first = dist.support().next().unwrap_or(0);
    let last = dist.support().last().unwrap_or(0);
    let slots = last - first + 1;
    let peak = dist.iter().map(|(_, p)| to_f64(p)).fold(0.0, f64::max);
    let ticks = ((peak / TICK_STEP).ceil() as usize).max(1);
    let y_max = ticks as f64 * TICK_STEP;

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let slot_w = plot_w / slots as f64;
    let bar_w = slot_w * 0.7;
    let y_of = |p: f64| TOP + plot_h * (1.0 - p / y_max);
    let label_every = slots.div_ceil(25).max(1);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    // axes
    let x0 = LEFT;
    let y0 = TOP + plot_h;
    let _ = writeln!(
        s,
        r#"<line x1="{x0}" y1="{y0}" x2="{:.1}" y2="{y0}" stroke="black"/>"#,
        LEFT + plot_w
    );
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{TOP}" x2="{x0}" y2="{y0}" stroke="black"/>"#);
    for t in 1..=ticks {
        let p = t as f64 * TICK_STEP;
        let y = y_of(p);
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/>"#,
            x0 - 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.2}" text-anchor="end">{p:.2}</text>"#,
            x0 - 8.0,
            y + 4.0
        );
    }

    for slot in 0..slots {
        let value = first + slot;
        let cx = LEFT + slot_w * (slot as f64 + 0.5);
        if slot % label_every == 0 {
            let _ = writeln!(
                s,
                r#"<text x="{cx:.2}" y="{:.1}" text-anchor="middle">{value}</text>"#,
                y0 + 18.0
            );
        }
        let p = to_f64(&dist.pmf(value));
        if p > 0.0 {
            let y = y_of(p);
            let _ = writeln!(
                s,
                r#"<rect class="bar" data-value="{value}" data-probability="{p:.6}" x="{:.2}" y="{y:.2}" width="{bar_w:.2}" height="{:.2}" fill="steelblue"><title>P = {p:.6}</title></rect>"#,
                cx - bar_w / 2.0,
                y0 - y
            );
        }
    }

    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">number of misplaced passengers</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">probability</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
