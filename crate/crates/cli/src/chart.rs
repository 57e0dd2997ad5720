//! Self-contained SVG line charts.

use std::path::Path;

use analyses::NamedSeries;

use crate::CliError;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 540.0;
const LEFT: f64 = 62.0;
const RIGHT: f64 = 210.0;
const TOP: f64 = 46.0;
const BOTTOM: f64 = 56.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

/// Render the chart and write it to `path`.
pub fn render_line_chart(
    series: &[&NamedSeries],
    title: &str,
    path: &Path,
) -> Result<(), CliError> {
    let svg = chart_svg(series, title)?;
    std::fs::write(path, svg).map_err(|err| CliError::Io(format!("{}: {err}", path.display())))
}

/// Build an SVG 1.1 document with one polyline per nonempty series, season
/// tick labels on the x axis, and a legend. Fails when every series is
/// empty.
pub fn chart_svg(series: &[&NamedSeries], title: &str) -> Result<String, CliError> {
    let drawn: Vec<&NamedSeries> = series.iter().copied().filter(|s| !s.points.is_empty()).collect();
    if drawn.is_empty() {
        return Err(CliError::Domain(
            "chart needs at least one nonempty series".to_string(),
        ));
    }

    let (mut x_min, mut x_max) = (i32::MAX, i32::MIN);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in &drawn {
        for p in &s.points {
            x_min = x_min.min(p.ordinal);
            x_max = x_max.max(p.ordinal);
            y_min = y_min.min(p.value);
            y_max = y_max.max(p.value);
        }
    }
    if x_min == x_max {
        x_min -= 1;
        x_max += 1;
    }
    let pad = if y_max > y_min {
        0.05 * (y_max - y_min)
    } else {
        (y_max.abs() * 0.1).max(1.0)
    };
    let (y_lo, y_hi) = (y_min - pad, y_max + pad);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x_of = |ordinal: i32| {
        LEFT + (f64::from(ordinal) - f64::from(x_min)) / (f64::from(x_max) - f64::from(x_min)) * plot_w
    };
    let y_of = |value: f64| TOP + (1.0 - (value - y_lo) / (y_hi - y_lo)) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" \
         height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"Helvetica, Arial, sans-serif\">\n"
    ));
    svg.push_str(&format!(
        "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" \
         fill=\"#222222\">{}</text>\n",
        LEFT + plot_w / 2.0,
        escape(title)
    ));

    // Horizontal gridlines and y tick labels.
    let step = nice_step((y_hi - y_lo) / 5.0);
    let decimals = if step >= 1.0 {
        0
    } else {
        (-step.log10()).ceil() as usize
    };
    let mut tick = (y_lo / step).ceil() * step;
    while tick <= y_hi + 1e-9 * step {
        let y = y_of(tick);
        svg.push_str(&format!(
            "  <line x1=\"{LEFT}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" \
             stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            LEFT + plot_w
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"11\" \
             fill=\"#444444\">{:.decimals$}</text>\n",
            LEFT - 8.0,
            y + 4.0,
            tick,
        ));
        tick += step;
    }

    // Axes.
    svg.push_str(&format!(
        "  <line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{:.2}\" \
         stroke=\"#333333\" stroke-width=\"1\"/>\n",
        TOP + plot_h
    ));
    svg.push_str(&format!(
        "  <line x1=\"{LEFT}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
         stroke=\"#333333\" stroke-width=\"1\"/>\n",
        TOP + plot_h,
        LEFT + plot_w,
        TOP + plot_h
    ));

    // X ticks at decade boundaries, labelled with season names.
    for ordinal in x_ticks(x_min, x_max) {
        let x = x_of(ordinal);
        let base = TOP + plot_h;
        svg.push_str(&format!(
            "  <line x1=\"{x:.2}\" y1=\"{base:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" \
             stroke=\"#333333\" stroke-width=\"1\"/>\n",
            base + 5.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\" \
             fill=\"#444444\">{}</text>\n",
            base + 20.0,
            escape(&tick_label(&drawn, ordinal))
        ));
    }

    // One polyline per series, plus the legend.
    let legend_x = LEFT + plot_w + 14.0;
    for (i, s) in drawn.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if s.points.len() == 1 {
            let p = &s.points[0];
            svg.push_str(&format!(
                "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>\n",
                x_of(p.ordinal),
                y_of(p.value)
            ));
        } else {
            let points: Vec<String> = s
                .points
                .iter()
                .map(|p| format!("{:.2},{:.2}", x_of(p.ordinal), y_of(p.value)))
                .collect();
            svg.push_str(&format!(
                "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\" \
                 points=\"{}\"/>\n",
                points.join(" ")
            ));
        }
        let ly = TOP + 14.0 + 20.0 * i as f64;
        svg.push_str(&format!(
            "  <line x1=\"{legend_x:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" \
             stroke=\"{color}\" stroke-width=\"2.5\"/>\n",
            legend_x + 22.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" fill=\"#222222\">{}</text>\n",
            legend_x + 28.0,
            ly + 4.0,
            escape(&s.name)
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn nice_step(raw: f64) -> f64 {
    let magnitude = 10f64.powf(raw.log10().floor());
    let normalized = raw / magnitude;
    let factor = if normalized <= 1.0 {
        1.0
    } else if normalized <= 2.0 {
        2.0
    } else if normalized <= 5.0 {
        5.0
    } else {
        10.0
    };
    factor * magnitude
}

fn x_ticks(x_min: i32, x_max: i32) -> Vec<i32> {
    let first_decade = x_min.div_euclid(10) * 10 + if x_min.rem_euclid(10) == 0 { 0 } else { 10 };
    let decades: Vec<i32> = (first_decade..=x_max).step_by(10).collect();
    if decades.len() >= 2 {
        return decades;
    }
    let span = (x_max - x_min).max(1);
    let step = (span / 5).max(1);
    (x_min..=x_max).step_by(step as usize).collect()
}

fn tick_label(series: &[&NamedSeries], ordinal: i32) -> String {
    series
        .iter()
        .flat_map(|s| s.points.iter())
        .find(|p| p.ordinal == ordinal)
        .map(|p| p.label.clone())
        .unwrap_or_else(|| dataset::season_label_for(ordinal))
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
