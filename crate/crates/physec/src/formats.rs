//! Text file formats: SNR grid CSV, heatmaps, equivocation matrix, frontier.
//!
//! Every number written here goes through [`fmt_num`] so that output files
//! are byte-stable.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use physec_core::{ChannelGrid, EquivocationMatrix, Location, Point, SweepPoint, SUBCARRIERS};

use crate::error::{Error, Result};

/// Fixed-decimal rendering with six significant digits.
///
/// ```
/// assert_eq!(physec::formats::fmt_num(21.75), "21.7500");
/// assert_eq!(physec::formats::fmt_num(100.0), "100.000");
/// assert_eq!(physec::formats::fmt_num(0.0), "0.00000");
/// ```
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0.00000".into();
    }
    let magnitude = x.abs().log10().floor() as i32 + 1;
    let mut decimals = (6 - magnitude).clamp(0, 15) as usize;
    let mut s = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit (9.999996 -> 10.00000).
    let int_digits = s.trim_start_matches('-').split('.').next().map_or(0, str::len) as i32;
    if int_digits > magnitude.max(1) && decimals > 0 {
        decimals -= 1;
        s = format!("{x:.decimals$}");
    }
    if s.trim_start_matches(['-', '0', '.']).is_empty() {
        // Values that round to zero print without a sign.
        s = s.trim_start_matches('-').to_string();
    }
    s
}

pub const GRID_SCHEMA: &str =
    "optional '# tx=X,Y spacing=S' line, header x,y,region,snr_0,...,snr_63, then one row of 67 fields per location";

fn grid_header() -> Vec<String> {
    let mut h = vec!["x".to_string(), "y".into(), "region".into()];
    h.extend((0..SUBCARRIERS).map(|i| format!("snr_{i}")));
    h
}

fn csv_string(build: impl FnOnce(&mut csv::Writer<&mut Vec<u8>>) -> csv::Result<()>) -> String {
    let mut buf = Vec::new();
    {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(&mut buf);
        build(&mut w).expect("writing to memory");
        w.flush().expect("writing to memory");
    }
    String::from_utf8(buf).expect("csv output is utf-8")
}

pub fn grid_to_csv(grid: &ChannelGrid) -> String {
    let tx = grid.tx();
    let mut out = format!(
        "# tx={},{} spacing={}\n",
        fmt_num(tx.x),
        fmt_num(tx.y),
        fmt_num(grid.grid_spacing())
    );
    out += &csv_string(|w| {
        w.write_record(grid_header())?;
        for (i, loc) in grid.locations().iter().enumerate() {
            let mut rec = vec![fmt_num(loc.x), fmt_num(loc.y), loc.region.clone()];
            rec.extend(grid.snr(i).iter().map(|&v| fmt_num(v)));
            w.write_record(rec)?;
        }
        Ok(())
    });
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn read_grid(path: &Path) -> Result<ChannelGrid> {
    parse_grid(&read_text(path)?, path)
}

fn parse_metadata(line: &str) -> Option<(Point, f64)> {
    let body = line.strip_prefix('#')?.trim();
    let (mut tx, mut spacing) = (None, None);
    for part in body.split_whitespace() {
        if let Some(v) = part.strip_prefix("tx=") {
            let (x, y) = v.split_once(',')?;
            tx = Some(Point {
                x: x.parse().ok()?,
                y: y.parse().ok()?,
            });
        } else if let Some(v) = part.strip_prefix("spacing=") {
            spacing = Some(v.parse().ok()?);
        }
    }
    Some((tx?, spacing?))
}

/// Parses grid CSV text; `path` is only used in error messages.
pub fn parse_grid(text: &str, path: &Path) -> Result<ChannelGrid> {
    let malformed = |line: u64, message: String| Error::Malformed {
        path: path.into(),
        line,
        message,
        schema: GRID_SCHEMA,
    };
    let (tx, spacing) = text
        .lines()
        .find(|l| l.starts_with('#'))
        .and_then(parse_metadata)
        .unwrap_or((Point { x: 0.0, y: 0.0 }, 0.0));

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    let header_line = reader.position().line();
    let headers = reader
        .headers()
        .map_err(|e| malformed(header_line.max(1), e.to_string()))?
        .clone();
    let line_of = |pos: Option<&csv::Position>| pos.map_or(0, csv::Position::line);
    if headers.iter().ne(grid_header().iter().map(String::as_str)) {
        return Err(malformed(
            line_of(headers.position()),
            format!("bad header starting {:?}", headers.iter().take(4).collect::<Vec<_>>()),
        ));
    }

    let mut locations = Vec::new();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, csv::Position::line);
            malformed(line, e.to_string())
        })?;
        let line = line_of(record.position());
        if record.len() != 3 + SUBCARRIERS {
            return Err(malformed(line, format!("{} fields", record.len())));
        }
        let num = |i: usize| -> Result<f64> {
            let field = &record[i];
            field
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| malformed(line, format!("column {i}: {field:?} is not a finite number")))
        };
        locations.push(Location {
            x: num(0)?,
            y: num(1)?,
            region: record[2].to_string(),
        });
        rows.push((3..3 + SUBCARRIERS).map(num).collect::<Result<Vec<f64>>>()?);
    }
    if locations.is_empty() {
        return Err(malformed(header_line.max(1), "no locations".into()));
    }
    Ok(ChannelGrid::from_rows(locations, rows, tx, spacing)?)
}

pub fn heatmap_csv(grid: &ChannelGrid, values: &[f64]) -> String {
    csv_string(|w| {
        w.write_record(["x", "y", "value"])?;
        for (loc, &v) in grid.locations().iter().zip(values) {
            w.write_record([fmt_num(loc.x), fmt_num(loc.y), fmt_num(v)])?;
        }
        Ok(())
    })
}

/// Rows are equivocation in bits, highest first; columns are the number of
/// revealed bits.
pub fn eqmatrix_csv(m: &EquivocationMatrix) -> String {
    csv_string(|w| {
        let mut header = vec!["equivocation_bits".to_string()];
        header.extend((0..=m.n()).map(|mu| mu.to_string()));
        w.write_record(header)?;
        for (e, counts) in m.rows_descending() {
            let mut rec = vec![e.to_string()];
            rec.extend(counts.iter().map(u64::to_string));
            w.write_record(rec)?;
        }
        Ok(())
    })
}

pub const FRONTIER_HEADER: [&str; 9] = [
    "code_label",
    "n",
    "k",
    "rate",
    "tau_db",
    "active_carriers",
    "throughput",
    "min_equivocation_pct",
    "worst_eve_location",
];

pub fn frontier_csv(points: &[SweepPoint]) -> String {
    csv_string(|w| {
        w.write_record(FRONTIER_HEADER)?;
        for p in points {
            w.write_record([
                p.code_label.clone(),
                p.n.to_string(),
                p.k.to_string(),
                fmt_num(p.rate),
                fmt_num(p.tau_db),
                p.active_carriers.to_string(),
                fmt_num(p.throughput),
                fmt_num(p.min_equivocation_pct),
                p.worst_eve_location.to_string(),
            ])?;
        }
        Ok(())
    })
}

// Five-stop perceptual ramp, low to high.
const RAMP: [(u8, u8, u8); 5] = [
    (0x44, 0x01, 0x54),
    (0x3b, 0x52, 0x8b),
    (0x21, 0x91, 0x8c),
    (0x5e, 0xc9, 0x62),
    (0xfd, 0xe7, 0x25),
];

/// Color for `t` in `[0, 1]` on the fixed ramp.
pub fn ramp_color(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let pos = t * (RAMP.len() - 1) as f64;
    let i = (pos.floor() as usize).min(RAMP.len() - 2);
    let f = pos - i as f64;
    let mix = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * f).round() as u8;
    let (a, b) = (RAMP[i], RAMP[i + 1]);
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn cell_size(grid: &ChannelGrid) -> f64 {
    if grid.grid_spacing() > 0.0 {
        return grid.grid_spacing();
    }
    let locs = grid.locations();
    let mut best = f64::INFINITY;
    for (i, a) in locs.iter().enumerate() {
        for b in &locs[i + 1..] {
            let d = (a.x - b.x).abs().max((a.y - b.y).abs());
            if d > 0.0 {
                best = best.min(d);
            }
        }
    }
    if best.is_finite() {
        best
    } else {
        1.0
    }
}

/// Square cells at each location, colored on the fixed ramp between the
/// smallest and largest value, with the transmitter marked.
pub fn heatmap_svg(grid: &ChannelGrid, values: &[f64], title: &str) -> String {
    let cell = cell_size(grid);
    let locs = grid.locations();
    let tx = grid.tx();
    let xs = locs.iter().map(|l| l.x).chain([tx.x]);
    let ys = locs.iter().map(|l| l.y).chain([tx.y]);
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let (y0, y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let (x0, y0, x1, y1) = (x0 - cell / 2.0, y0 - cell / 2.0, x1 + cell / 2.0, y1 + cell / 2.0);
    let scale = 720.0 / (x1 - x0).max(y1 - y0).max(1e-9);
    let (w, h) = ((x1 - x0) * scale, (y1 - y0) * scale);
    let (margin, legend) = (20.0, 60.0);
    let finite = values.iter().copied().filter(|v| v.is_finite());
    let (lo, hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let span = if hi > lo { hi - lo } else { 1.0 };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" font-family="sans-serif" font-size="12">"#,
        w + 2.0 * margin,
        h + 2.0 * margin + legend
    );
    let _ = writeln!(s, r#"<text x="{margin}" y="14">{}</text>"#, escape(title));
    for (loc, &v) in locs.iter().zip(values) {
        let px = margin + (loc.x - cell / 2.0 - x0) * scale;
        // SVG y grows downward; flip so that larger y is up.
        let py = margin + (y1 - loc.y - cell / 2.0) * scale;
        let _ = writeln!(
            s,
            r#"<rect x="{px:.2}" y="{py:.2}" width="{c:.2}" height="{c:.2}" fill="{}"><title>{}: {}</title></rect>"#,
            ramp_color((v - lo) / span),
            escape(&loc.region),
            fmt_num(v),
            c = cell * scale,
        );
    }
    let _ = writeln!(
        s,
        r##"<circle cx="{:.2}" cy="{:.2}" r="5" fill="#e8282b" stroke="white"/>"##,
        margin + (tx.x - x0) * scale,
        margin + (y1 - tx.y) * scale
    );
    let ly = h + 2.0 * margin + 10.0;
    let _ = writeln!(
        s,
        r#"<defs><linearGradient id="ramp">{}</linearGradient></defs>"#,
        (0..RAMP.len())
            .map(|i| {
                let t = i as f64 / (RAMP.len() - 1) as f64;
                format!(r#"<stop offset="{t:.2}" stop-color="{}"/>"#, ramp_color(t))
            })
            .collect::<String>()
    );
    let _ = writeln!(
        s,
        r#"<rect x="{margin}" y="{ly:.2}" width="{w:.2}" height="14" fill="url(#ramp)"/>"#
    );
    let _ = writeln!(s, r#"<text x="{margin}" y="{:.2}">{}</text>"#, ly + 30.0, fmt_num(lo));
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
        margin + w,
        ly + 30.0,
        fmt_num(hi)
    );
    s.push_str("</svg>\n");
    s
}

const TAU_PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

/// Throughput against minimum equivocation, one color per threshold.
pub fn frontier_svg(points: &[SweepPoint]) -> String {
    let (w, h, left, bottom, top, right) = (640.0, 420.0, 60.0, 50.0, 30.0, 110.0);
    let plot_w = w - left - right;
    let plot_h = h - top - bottom;
    let max_t = points.iter().map(|p| p.throughput).fold(0.0f64, f64::max).max(1.0);
    let x_max = (max_t / 10.0).ceil() * 10.0;
    let mut taus: Vec<f64> = points.iter().map(|p| p.tau_db).collect();
    taus.sort_by(f64::total_cmp);
    taus.dedup();
    let color = |tau: f64| {
        let i = taus.iter().position(|&t| t == tau).unwrap_or(0);
        TAU_PALETTE[i % TAU_PALETTE.len()]
    };
    let px = |t: f64| left + t / x_max * plot_w;
    let py = |e: f64| top + (1.0 - e / 100.0) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=5 {
        let t = x_max * i as f64 / 5.0;
        let e = 100.0 * i as f64 / 5.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            px(t),
            top + plot_h + 16.0,
            fmt_num(t)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 6.0,
            py(e) + 4.0,
            fmt_num(e)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">throughput (bits per channel use)</text>"#,
        left + plot_w / 2.0,
        h - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" transform="rotate(-90 16 {:.2})" text-anchor="middle">minimum equivocation (%)</text>"#,
        top + plot_h / 2.0,
        top + plot_h / 2.0
    );
    for p in points {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="{}" fill-opacity="0.8"><title>{} tau={}</title></circle>"#,
            px(p.throughput),
            py(p.min_equivocation_pct),
            color(p.tau_db),
            escape(&p.code_label),
            fmt_num(p.tau_db)
        );
    }
    for (i, &tau) in taus.iter().enumerate() {
        let y = top + 14.0 + 18.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="5" fill="{}"/><text x="{:.2}" y="{:.2}">tau {} dB</text>"#,
            w - right + 16.0,
            y,
            color(tau),
            w - right + 26.0,
            y + 4.0,
            fmt_num(tau)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_num(2.513903836675), "2.51390");
        assert_eq!(fmt_num(-12.5), "-12.5000");
        assert_eq!(fmt_num(123456.7), "123457");
        assert_eq!(fmt_num(1234567.0), "1234567");
        assert_eq!(fmt_num(0.000123456789), "0.000123457");
        assert_eq!(fmt_num(9.9999996), "10.0000");
        assert_eq!(fmt_num(-0.0), "0.00000");
        assert_eq!(fmt_num(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn ramp_endpoints() {
        assert_eq!(ramp_color(0.0), "#440154");
        assert_eq!(ramp_color(1.0), "#fde725");
        assert_eq!(ramp_color(2.0), "#fde725");
    }

    fn small_grid() -> ChannelGrid {
        let locs = vec![
            Location {
                x: 0.5,
                y: 0.5,
                region: "office".into(),
            },
            Location {
                x: 1.0,
                y: 0.5,
                region: "lab, west".into(),
            },
        ];
        let mut a = [25.0; 64];
        a[3] = -1.25;
        ChannelGrid::new(locs, vec![a, [30.5; 64]], Point { x: 0.0, y: 1.0 }, 0.5).unwrap()
    }

    #[test]
    fn grid_round_trip() {
        let g = small_grid();
        let text = grid_to_csv(&g);
        assert!(text.starts_with("# tx=0.00000,1.00000 spacing=0.500000\nx,y,region,snr_0,"));
        let back = parse_grid(&text, Path::new("mem.csv")).unwrap();
        assert_eq!(back, g);
        assert_eq!(grid_to_csv(&back), text);
    }

    #[test]
    fn grid_errors_name_file_and_line() {
        let text = grid_to_csv(&small_grid()).replace("30.5000", "oops");
        let err = parse_grid(&text, Path::new("site.csv")).unwrap_err().to_string();
        assert!(err.starts_with("site.csv:4:"), "{err}");
        assert!(err.contains("snr_63"), "{err}");

        let err = parse_grid("a,b\n1,2\n", Path::new("bad.csv")).unwrap_err().to_string();
        assert!(err.starts_with("bad.csv:1:"), "{err}");

        let mut lines: Vec<&str> = text.lines().collect();
        let short = lines[2].rsplit_once(',').unwrap().0.to_string();
        lines[2] = &short;
        let err = parse_grid(&lines.join("\n"), Path::new("s.csv"))
            .unwrap_err()
            .to_string();
        assert!(err.starts_with("s.csv:3: 66 fields"), "{err}");
    }

    #[test]
    fn frontier_layout() {
        let p = SweepPoint {
            code_label: "RM(1,2)-dual".into(),
            n: 4,
            k: 3,
            rate: 0.75,
            tau_db: 27.0,
            active_carriers: 29,
            throughput: 21.75,
            min_equivocation_pct: 100.0,
            worst_eve_location: 12,
        };
        assert_eq!(
            frontier_csv(&[p]),
            "code_label,n,k,rate,tau_db,active_carriers,throughput,min_equivocation_pct,worst_eve_location\n\
             \"RM(1,2)-dual\",4,3,0.750000,27.0000,29,21.7500,100.000,12\n"
        );
    }
}
