use serde::{Deserialize, Serialize};

use crate::world::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    GoalKeeper,
    Defender,
    HalfBacker,
    Attacker,
}

/// Axis-aligned rectangle in team coordinates; on disk `[x_min, x_max, y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl From<[f64; 4]> for Rect {
    fn from([x_min, x_max, y_min, y_max]: [f64; 4]) -> Self {
        Self { x_min, x_max, y_min, y_max }
    }
}

impl From<Rect> for [f64; 4] {
    fn from(r: Rect) -> Self {
        [r.x_min, r.x_max, r.y_min, r.y_max]
    }
}

impl Rect {
    pub fn contains(&self, p: Vec3) -> bool {
        (self.x_min..=self.x_max).contains(&p.x) && (self.y_min..=self.y_max).contains(&p.y)
    }

    pub fn clamp(&self, p: Vec3) -> Vec3 {
        Vec3::new(p.x.clamp(self.x_min, self.x_max), p.y.clamp(self.y_min, self.y_max), p.z)
    }

    pub fn depth(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn center(&self) -> Vec3 {
        Vec3::ground(0.5 * (self.x_min + self.x_max), 0.5 * (self.y_min + self.y_max))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
struct GroundPoint(Vec3);

impl From<[f64; 2]> for GroundPoint {
    fn from([x, y]: [f64; 2]) -> Self {
        Self(Vec3::ground(x, y))
    }
}

impl From<GroundPoint> for [f64; 2] {
    fn from(p: GroundPoint) -> Self {
        [p.0.x, p.0.y]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SlotSpec {
    id: u8,
    role: Role,
    area: Rect,
    home: GroundPoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormationSlot {
    pub id: u8,
    pub role: Role,
    pub strategic_area: Rect,
    pub home_position: Vec3,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormationSpec {
    name: String,
    players: Vec<SlotSpec>,
}

/// Named formation with a static role per shirt number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FormationSpec", into = "FormationSpec")]
pub struct Formation {
    pub name: String,
    slots: Vec<FormationSlot>,
}

impl TryFrom<FormationSpec> for Formation {
    type Error = String;
    fn try_from(s: FormationSpec) -> Result<Self, String> {
        let slots = s
            .players
            .into_iter()
            .map(|p| FormationSlot { id: p.id, role: p.role, strategic_area: p.area, home_position: p.home.0 })
            .collect();
        Formation::new(s.name, slots)
    }
}

impl From<Formation> for FormationSpec {
    fn from(f: Formation) -> Self {
        FormationSpec {
            name: f.name,
            players: f
                .slots
                .into_iter()
                .map(|s| SlotSpec {
                    id: s.id,
                    role: s.role,
                    area: s.strategic_area,
                    home: GroundPoint(s.home_position),
                })
                .collect(),
        }
    }
}

impl Default for Formation {
    fn default() -> Self {
        crate::config::Config::builtin().formation.clone()
    }
}

impl Formation {
    pub fn new(name: String, mut slots: Vec<FormationSlot>) -> Result<Self, String> {
        slots.sort_by_key(|s| s.id);
        let ids: Vec<u8> = slots.iter().map(|s| s.id).collect();
        if ids != (1..=11).collect::<Vec<u8>>() {
            return Err(format!("formation `{name}` must list players 1..=11 once each, got {ids:?}"));
        }
        let keepers = slots.iter().filter(|s| s.role == Role::GoalKeeper).count();
        if keepers != 1 {
            return Err(format!("formation `{name}` needs exactly one GoalKeeper, has {keepers}"));
        }
        for s in &slots {
            let a = s.strategic_area;
            if !(a.x_min < a.x_max && a.y_min < a.y_max) {
                return Err(format!("formation `{name}` player {}: empty strategic area", s.id));
            }
            if !a.contains(s.home_position) {
                return Err(format!("formation `{name}` player {}: home outside strategic area", s.id));
            }
        }
        Ok(Self { name, slots })
    }

    pub fn slot(&self, id: u8) -> Option<&FormationSlot> {
        self.slots.get(usize::from(id).checked_sub(1)?)
    }

    pub fn slots(&self) -> &[FormationSlot] {
        &self.slots
    }

    pub fn role(&self, id: u8) -> Option<Role> {
        self.slot(id).map(|s| s.role)
    }

    pub fn goalkeeper(&self) -> u8 {
        self.slots.iter().find(|s| s.role == Role::GoalKeeper).map_or(1, |s| s.id)
    }
}
