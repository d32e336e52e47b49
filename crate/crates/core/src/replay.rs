//! Top-down SVG frames rendered from a match log.

use std::fmt::Write as _;

use thiserror::Error;

use crate::sim::{AgentDecision, LogLine, StateRecord, Team};
use crate::team::Intent;
use crate::world::FieldSpec;

/// Pixels per meter.
const SCALE: f64 = 8.0;
/// Border around the pitch, meters.
const BORDER: f64 = 4.0;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("log has no header line")]
    MissingHeader,
    #[error("frame step must be positive")]
    ZeroStep,
}

fn short_intent(intent: &Intent) -> String {
    match intent {
        Intent::Shoot { .. } => "shoot".into(),
        Intent::Pass { receiver, .. } => format!("pass {receiver}"),
        Intent::Dribble => "dribble".into(),
        Intent::Clear => "clear".into(),
        Intent::Catch => "catch".into(),
        Intent::Chase { .. } => "chase".into(),
        Intent::Mark { opponent, .. } => format!("mark {opponent}"),
        Intent::Position { .. } | Intent::Baseline => String::new(),
    }
}

/// One frame as a standalone SVG document.
pub fn render_frame(field: &FieldSpec, state: &StateRecord, decisions: &[AgentDecision]) -> String {
    let (hl, hw) = (field.half_length(), field.half_width());
    let px = |x: f64| (x + hl + BORDER) * SCALE;
    let py = |y: f64| (hw + BORDER - y) * SCALE;
    let (w, h) = (2.0 * (hl + BORDER) * SCALE, 2.0 * (hw + BORDER) * SCALE);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#);
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#2e7d32"/>"##);
    let _ = writeln!(
        s,
        r#"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="white" stroke-width="2"/>"#,
        px(-hl),
        py(hw),
        2.0 * hl * SCALE,
        2.0 * hw * SCALE
    );
    let _ = writeln!(s, r#"<line x1="{0:.1}" y1="{1:.1}" x2="{0:.1}" y2="{2:.1}" stroke="white" stroke-width="2"/>"#, px(0.0), py(hw), py(-hw));
    let _ = writeln!(
        s,
        r#"<circle cx="{:.1}" cy="{:.1}" r="{:.1}" fill="none" stroke="white" stroke-width="2"/>"#,
        px(0.0),
        py(0.0),
        crate::sim::CENTER_CIRCLE * SCALE
    );
    for side in [-1.0, 1.0] {
        let gx = px(side * hl);
        let depth = 1.5 * SCALE;
        let x = if side < 0.0 { gx - depth } else { gx };
        let _ = writeln!(
            s,
            r#"<rect x="{x:.1}" y="{:.1}" width="{depth:.1}" height="{:.1}" fill="none" stroke="white" stroke-width="3"/>"#,
            py(field.goal_width / 2.0),
            field.goal_width * SCALE
        );
    }
    for b in &state.players {
        let fill = match b.team {
            Team::A => "#1565c0",
            Team::B => "#c62828",
        };
        let (cx, cy) = (px(b.position.x), py(b.position.y));
        let (fx, fy) = (px(b.position.x + b.facing.x), py(b.position.y + b.facing.y));
        let _ = writeln!(s, r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="6" fill="{fill}" stroke="black"/>"#);
        let _ = writeln!(s, r#"<line x1="{cx:.1}" y1="{cy:.1}" x2="{fx:.1}" y2="{fy:.1}" stroke="black" stroke-width="2"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{cx:.1}" y="{:.1}" font-size="8" text-anchor="middle" fill="white">{}</text>"#,
            cy + 3.0,
            b.id
        );
        let label = decisions
            .iter()
            .find(|d| d.team == b.team && d.id == b.id)
            .map(|d| short_intent(&d.decision.intent))
            .unwrap_or_default();
        if !label.is_empty() {
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" font-size="9" fill="yellow">{label}</text>"#,
                cx + 8.0,
                cy - 8.0
            );
        }
    }
    let ball = state.ball.position;
    let _ = writeln!(
        s,
        r#"<circle cx="{:.1}" cy="{:.1}" r="{:.1}" fill="white" stroke="black"/>"#,
        px(ball.x),
        py(ball.y),
        3.0 + ball.z
    );
    let _ = writeln!(
        s,
        r#"<text x="10" y="20" font-size="14" fill="white">cycle {}  {} : {}  {:?}</text>"#,
        state.cycle,
        state.score.0,
        state.score.1,
        state.mode
    );
    s.push_str("</svg>\n");
    s
}

/// Every `step`-th cycle of a parsed log as `(cycle, svg)` pairs.
pub fn render_log(lines: &[LogLine], step: u64) -> Result<Vec<(u64, String)>, ReplayError> {
    if step == 0 {
        return Err(ReplayError::ZeroStep);
    }
    let field = lines
        .iter()
        .find_map(|l| match l {
            LogLine::Header { config, .. } => Some(config.field),
            _ => None,
        })
        .ok_or(ReplayError::MissingHeader)?;
    Ok(lines
        .iter()
        .filter_map(|l| match l {
            LogLine::Cycle { cycle, state, decisions, .. } if cycle % step == 0 => {
                Some((*cycle, render_frame(&field, state, decisions)))
            }
            _ => None,
        })
        .collect())
}
