use crate::ballot::Candidate;
use std::fmt::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProtocolKind {
    Ppr,
    SinglePeakedPpr,
    StvPpr,
}

impl ProtocolKind {
    pub fn name(self) -> &'static str {
        match self {
            ProtocolKind::Ppr => "ppr",
            ProtocolKind::SinglePeakedPpr => "sp-ppr",
            ProtocolKind::StvPpr => "stv-ppr",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "L",
            Side::Right => "R",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryKind {
    /// "Who is your favourite among these candidates?"
    TopAmong(Vec<Candidate>),
    /// "Is your next favourite left or right of `pivot`?" `left` and `right`
    /// are the nearest active candidates on either side.
    Direction {
        pivot: Candidate,
        left: Candidate,
        right: Candidate,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Top(Candidate),
    Side(Side),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub voter: usize,
    pub kind: QueryKind,
    pub answer: Answer,
    pub bits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepEvent {
    /// Initial elicitation of every voter's top candidate.
    Initial,
    Eliminated(Candidate),
    Elected(Candidate),
}

/// One protocol step: the event that triggered it and the queries it issued.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub event: StepEvent,
    /// Active candidates just before the event.
    pub active_before: Vec<Candidate>,
    pub queries: Vec<Query>,
    /// Supporters whose next candidate was inferred without a query.
    pub forced: usize,
}

impl Step {
    /// Number of voters whose current top left the active set at this step.
    pub fn supporters(&self) -> usize {
        self.queries.len() + self.forced
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub protocol: ProtocolKind,
    pub num_candidates: usize,
    pub num_voters: usize,
    pub steps: Vec<Step>,
    pub winners: Vec<Candidate>,
    pub total_bits: u64,
}

impl Transcript {
    pub(crate) fn new(protocol: ProtocolKind, num_candidates: usize, num_voters: usize) -> Self {
        Transcript {
            protocol,
            num_candidates,
            num_voters,
            steps: Vec::new(),
            winners: Vec::new(),
            total_bits: 0,
        }
    }

    pub(crate) fn push_step(&mut self, step: Step) {
        self.total_bits += step.queries.iter().map(|q| u64::from(q.bits)).sum::<u64>();
        self.steps.push(step);
    }

    pub fn queries(&self) -> impl Iterator<Item = &Query> {
        self.steps.iter().flat_map(|s| s.queries.iter())
    }

    /// Re-query counts of every step after the initial elicitation.
    pub fn requery_counts(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter(|s| s.event != StepEvent::Initial)
            .map(|s| s.queries.len())
            .collect()
    }

    /// `winner: 3, bits: 61` (or `winners: 0 1, bits: ...`).
    pub fn summary(&self) -> String {
        let ws = join(&self.winners);
        if self.protocol == ProtocolKind::StvPpr {
            format!("winners: {ws}, bits: {}", self.total_bits)
        } else {
            format!("winner: {ws}, bits: {}", self.total_bits)
        }
    }

    /// Line-oriented key/value rendering with stable field names.
    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        writeln!(out, "format: irv-commlab/transcript v1").unwrap();
        writeln!(out, "protocol: {}", self.protocol.name()).unwrap();
        writeln!(out, "candidates: {}", self.num_candidates).unwrap();
        writeln!(out, "voters: {}", self.num_voters).unwrap();
        for (i, step) in self.steps.iter().enumerate() {
            let event = match step.event {
                StepEvent::Initial => "initial".to_string(),
                StepEvent::Eliminated(c) => format!("eliminated={c}"),
                StepEvent::Elected(c) => format!("elected={c}"),
            };
            writeln!(
                out,
                "round: {i} {event} active={} queries={} forced={}",
                join_csv(&step.active_before),
                step.queries.len(),
                step.forced
            )
            .unwrap();
            for q in &step.queries {
                let (kind, scope) = match &q.kind {
                    QueryKind::TopAmong(a) => ("top", format!("active={}", join_csv(a))),
                    QueryKind::Direction { pivot, left, right } => {
                        ("direction", format!("pivot={pivot} left={left} right={right}"))
                    }
                };
                let answer = match q.answer {
                    Answer::Top(c) => c.to_string(),
                    Answer::Side(s) => s.to_string(),
                };
                writeln!(
                    out,
                    "query: voter={} kind={kind} {scope} answer={answer} bits={}",
                    q.voter, q.bits
                )
                .unwrap();
            }
        }
        writeln!(out, "winners: {}", join(&self.winners)).unwrap();
        writeln!(out, "total_bits: {}", self.total_bits).unwrap();
        out
    }
}

fn join(cs: &[Candidate]) -> String {
    cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn join_csv(cs: &[Candidate]) -> String {
    cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}
