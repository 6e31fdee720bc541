//! SVG overlays of several curves sharing one abscissa.

use std::path::Path;

use anyhow::{anyhow, Result};
use plotters::prelude::*;

use crate::output::create_parent;

pub struct Curve {
    pub label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YScale {
    Linear,
    Log,
}

pub struct Panel<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    pub scale: YScale,
}

const PALETTE: [RGBColor; 4] = [BLUE, RED, RGBColor(0, 140, 0), BLACK];

fn bounds(curves: &[Curve], log: bool) -> (f64, f64, f64, f64) {
    let xs = curves.iter().flat_map(|c| c.x.iter().copied());
    let (x_lo, x_hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    let ys = curves
        .iter()
        .flat_map(|c| c.y.iter().copied())
        .filter(|y| y.is_finite() && (!log || *y > 0.0));
    let (mut y_lo, mut y_hi) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    if log {
        y_lo = y_lo.max(y_hi * 1e-8);
    } else {
        y_lo = y_lo.min(0.0);
        y_hi *= 1.05;
    }
    if !(y_hi > y_lo) {
        y_hi = y_lo + 1.0;
    }
    (x_lo, x_hi, y_lo, y_hi)
}

pub fn write_svg(path: &Path, panel: &Panel<'_>, curves: &[Curve]) -> Result<()> {
    create_parent(path)?;
    let root = SVGBackend::new(path, (800, 560)).into_drawing_area();
    let err = |e: &dyn std::fmt::Display| anyhow!("plotting {}: {e}", path.display());
    root.fill(&WHITE).map_err(|e| err(&e))?;
    let log = panel.scale == YScale::Log;
    let (x_lo, x_hi, y_lo, y_hi) = bounds(curves, log);
    let mut builder = ChartBuilder::on(&root);
    builder
        .caption(panel.title, ("sans-serif", 20))
        .margin(12)
        .x_label_area_size(40)
        .y_label_area_size(70);

    macro_rules! draw {
        ($chart:expr, $clip:expr) => {{
            let mut chart = $chart.map_err(|e| err(&e))?;
            chart
                .configure_mesh()
                .x_desc(panel.x_label)
                .y_desc(panel.y_label)
                .draw()
                .map_err(|e| err(&e))?;
            for (i, curve) in curves.iter().enumerate() {
                let color = PALETTE[i % PALETTE.len()];
                let points = curve.x.iter().copied().zip(curve.y.iter().copied()).map($clip);
                chart
                    .draw_series(LineSeries::new(points, color.stroke_width(2)))
                    .map_err(|e| err(&e))?
                    .label(curve.label.clone())
                    .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], color.stroke_width(2)));
            }
            chart
                .configure_series_labels()
                .background_style(WHITE.mix(0.9))
                .border_style(BLACK)
                .draw()
                .map_err(|e| err(&e))?;
        }};
    }

    if log {
        draw!(
            builder.build_cartesian_2d(x_lo..x_hi, (y_lo..y_hi).log_scale()),
            |(x, y): (f64, f64)| (x, y.max(y_lo))
        );
    } else {
        draw!(builder.build_cartesian_2d(x_lo..x_hi, y_lo..y_hi), |p: (f64, f64)| p);
    }
    root.present().map_err(|e| err(&e))?;
    Ok(())
}
