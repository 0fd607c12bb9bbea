//! Standalone SVG rendering of the bandwidth/latency plane.
//!
//! Log-log axes with bandwidth on the abscissa and latency on the ordinate,
//! the region boundary as a dashed polyline, and one labelled marker per
//! service coloured by feasibility. Pure string assembly, fixed-precision
//! coordinates: identical inputs produce identical bytes.

/// One service dot on the plane.
#[derive(Debug, Clone)]
pub struct PlaneMarker {
    pub name: String,
    /// Required bandwidth, bit/s.
    pub bandwidth: f64,
    /// Tolerated latency, seconds.
    pub latency: f64,
    pub feasible: bool,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 32.0;
const MARGIN_BOTTOM: f64 = 64.0;

const FEASIBLE_COLOR: &str = "#2e8b57";
const INFEASIBLE_COLOR: &str = "#c0392b";

/// Renders the plane. `boundary` must be non-empty and is expected in
/// ascending bandwidth order, as produced by the boundary-curve sampler.
pub fn plane_svg(markers: &[PlaneMarker], boundary: &[(f64, f64)]) -> String {
    assert!(!boundary.is_empty(), "boundary must be non-empty");

    // Decade-padded log ranges covering the curve and every marker.
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for &(bandwidth, latency) in boundary {
        x_min = x_min.min(bandwidth);
        x_max = x_max.max(bandwidth);
        y_min = y_min.min(latency);
        y_max = y_max.max(latency);
    }
    for marker in markers {
        x_min = x_min.min(marker.bandwidth);
        x_max = x_max.max(marker.bandwidth);
        y_min = y_min.min(marker.latency);
        y_max = y_max.max(marker.latency);
    }
    let lx0 = x_min.log10().floor();
    let lx1 = x_max.log10().ceil().max(lx0 + 1.0);
    let ly0 = y_min.log10().floor();
    let ly1 = y_max.log10().ceil().max(ly0 + 1.0);

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x_of = |bandwidth: f64| MARGIN_LEFT + (bandwidth.log10() - lx0) / (lx1 - lx0) * plot_w;
    // Latency grows upward, screen y grows downward.
    let y_of = |latency: f64| MARGIN_TOP + (ly1 - latency.log10()) / (ly1 - ly0) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" \
         height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" \
         font-size=\"12\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Decade grid and tick labels.
    let mut exp = lx0 as i32;
    while exp <= lx1 as i32 {
        let value = 10f64.powi(exp);
        let x = x_of(value);
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{MARGIN_TOP:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" \
             stroke=\"#dddddd\"/>\n",
            MARGIN_TOP + plot_h
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            MARGIN_TOP + plot_h + 18.0,
            rate_tick(value)
        ));
        exp += 1;
    }
    let mut exp = ly0 as i32;
    while exp <= ly1 as i32 {
        let value = 10f64.powi(exp);
        let y = y_of(value);
        svg.push_str(&format!(
            "<line x1=\"{MARGIN_LEFT:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" \
             stroke=\"#dddddd\"/>\n",
            MARGIN_LEFT + plot_w
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            MARGIN_LEFT - 8.0,
            y + 4.0,
            time_tick(value)
        ));
        exp += 1;
    }

    // Frame and axis titles.
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_LEFT:.2}\" y=\"{MARGIN_TOP:.2}\" width=\"{plot_w:.2}\" \
         height=\"{plot_h:.2}\" fill=\"none\" stroke=\"#333333\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">bandwidth</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 16.0
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">\
         latency</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    ));

    // Region captions: low latency sits below the curve on this chart.
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"#777777\">bit-rate limited</text>\n",
        MARGIN_LEFT + 12.0,
        MARGIN_TOP + plot_h - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"#777777\" text-anchor=\"end\">latency limited\
         </text>\n",
        MARGIN_LEFT + plot_w - 12.0,
        MARGIN_TOP + 20.0
    ));

    // The boundary.
    let points: Vec<String> = boundary
        .iter()
        .map(|&(bandwidth, latency)| format!("{:.2},{:.2}", x_of(bandwidth), y_of(latency)))
        .collect();
    svg.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"#555555\" stroke-width=\"1.5\" \
         stroke-dasharray=\"6 4\" points=\"{}\"/>\n",
        points.join(" ")
    ));

    // Service markers.
    for marker in markers {
        let x = x_of(marker.bandwidth);
        let y = y_of(marker.latency);
        let color = if marker.feasible {
            FEASIBLE_COLOR
        } else {
            INFEASIBLE_COLOR
        };
        svg.push_str(&format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"5\" fill=\"{color}\"/>\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"{color}\">{}</text>\n",
            x + 8.0,
            y - 6.0,
            escape(&marker.name)
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

fn rate_tick(bits_per_s: f64) -> String {
    if bits_per_s >= 1e9 {
        format!("{}G", trim(bits_per_s / 1e9))
    } else if bits_per_s >= 1e6 {
        format!("{}M", trim(bits_per_s / 1e6))
    } else if bits_per_s >= 1e3 {
        format!("{}k", trim(bits_per_s / 1e3))
    } else {
        format!("{}bit/s", trim(bits_per_s))
    }
}

fn time_tick(seconds: f64) -> String {
    if seconds >= 1.0 {
        format!("{}s", trim(seconds))
    } else if seconds >= 1e-3 {
        format!("{}ms", trim(seconds * 1e3))
    } else {
        format!("{}us", trim(seconds * 1e6))
    }
}

fn trim(value: f64) -> String {
    format!("{value}")
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boundary() -> Vec<(f64, f64)> {
        vec![(10e6, 0.116), (100e6, 0.0116), (1e9, 0.00116)]
    }

    #[test]
    fn structural_counts() {
        let markers = vec![
            PlaneMarker {
                name: "a".into(),
                bandwidth: 10e6,
                latency: 0.1,
                feasible: true,
            },
            PlaneMarker {
                name: "b".into(),
                bandwidth: 100e6,
                latency: 0.01,
                feasible: false,
            },
        ];
        let svg = plane_svg(&markers, &boundary());
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains(FEASIBLE_COLOR));
        assert!(svg.contains(INFEASIBLE_COLOR));
        assert!(svg.contains("stroke-dasharray"));
    }

    #[test]
    fn empty_catalog_draws_only_the_boundary() {
        let svg = plane_svg(&[], &boundary());
        assert_eq!(svg.matches("<circle").count(), 0);
        assert_eq!(svg.matches("<polyline").count(), 1);
    }

    #[test]
    fn boundary_descends_in_screen_space() {
        // Higher bandwidth means lower tolerable latency, which is lower on
        // the chart, i.e. a growing screen y.
        let svg = plane_svg(&[], &boundary());
        let points_attr = svg
            .split("points=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap();
        let ys: Vec<f64> = points_attr
            .split(' ')
            .map(|pair| pair.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        assert!(ys.windows(2).all(|w| w[1] > w[0]), "{ys:?}");
    }

    #[test]
    fn output_is_deterministic() {
        let svg_a = plane_svg(&[], &boundary());
        let svg_b = plane_svg(&[], &boundary());
        assert_eq!(svg_a, svg_b);
    }

    #[test]
    fn names_are_escaped() {
        let markers = vec![PlaneMarker {
            name: "a<b&c".into(),
            bandwidth: 10e6,
            latency: 0.1,
            feasible: true,
        }];
        let svg = plane_svg(&markers, &boundary());
        assert!(svg.contains("a&lt;b&amp;c"));
    }
}
