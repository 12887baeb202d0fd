//! Blackboard protocols with fixed round schedules and exact bit accounting.
//!
//! Players and rounds are 0-based. In a set chasing intersection game with
//! `p` layers per side, player `i < p` holds `left.funcs[i]` and player
//! `p + i` holds `right.funcs[i]`.

use std::fmt::Write as _;

use crate::chasing::{IndexSet, IntersectScInstance, SetFunctionTable};
use crate::{Error, Result};

/// Who speaks when.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    players: usize,
    order: Vec<Vec<usize>>,
}

impl Schedule {
    /// Players `0..players` in order, repeated `rounds` times.
    pub fn standard(players: usize, rounds: usize) -> Result<Self> {
        Self::custom(players, vec![(0..players).collect(); rounds])
    }

    /// Arbitrary per-round speaking orders; each player speaks at most once
    /// per round.
    pub fn custom(players: usize, order: Vec<Vec<usize>>) -> Result<Self> {
        if players == 0 {
            return Err(Error::domain("a schedule needs at least one player"));
        }
        if order.iter().all(Vec::is_empty) {
            return Err(Error::domain("a schedule needs at least one turn"));
        }
        for (round, speakers) in order.iter().enumerate() {
            let mut seen = vec![false; players];
            for &s in speakers {
                if s >= players {
                    return Err(Error::domain(format!("round {round}: no player {s}")));
                }
                if std::mem::replace(&mut seen[s], true) {
                    return Err(Error::domain(format!("round {round}: player {s} speaks twice")));
                }
            }
        }
        Ok(Self { players, order })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn rounds(&self) -> usize {
        self.order.len()
    }

    pub fn turns(&self) -> impl Iterator<Item = Turn> + '_ {
        self.order.iter().enumerate().flat_map(|(round, speakers)| {
            speakers.iter().map(move |&speaker| Turn { round, speaker })
        })
    }

    /// The player that outputs the answer.
    pub fn last_speaker(&self) -> usize {
        self.turns().last().expect("schedule has a turn").speaker
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Turn {
    pub round: usize,
    pub speaker: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    pub round: usize,
    pub player: usize,
    pub bits: Vec<bool>,
}

/// Every message posted so far, visible to all players.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    messages: Vec<Message>,
    total_bits: usize,
}

impl Transcript {
    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    pub fn total_bits(&self) -> usize {
        self.total_bits
    }

    /// Number of distinct rounds in which somebody spoke.
    pub fn rounds_used(&self) -> usize {
        self.messages.last().map_or(0, |m| m.round + 1)
    }

    pub fn message(&self, round: usize, player: usize) -> Option<&Message> {
        self.messages
            .iter()
            .find(|m| m.round == round && m.player == player)
    }

    fn push(&mut self, msg: Message) {
        self.total_bits += msg.bits.len();
        self.messages.push(msg);
    }

    /// One line per message: `round player bits:<01-string>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for m in &self.messages {
            write!(out, "{} {} bits:", m.round, m.player).unwrap();
            out.extend(m.bits.iter().map(|&b| if b { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }
}

/// A deterministic player: its messages depend only on its own input and the
/// board.
pub trait Strategy<I> {
    /// Called for every player at every turn. The scheduled speaker must
    /// return a message; everybody else must stay silent.
    fn speak(&self, me: usize, input: &I, turn: Turn, board: &Transcript) -> Option<Vec<bool>>;

    /// Called on the last scheduled speaker once the schedule is exhausted.
    fn output(&self, me: usize, input: &I, board: &Transcript) -> bool;
}

/// Runs `schedule`, returning the last speaker's answer and the transcript.
pub fn run_protocol<I>(
    schedule: &Schedule,
    strategies: &[&dyn Strategy<I>],
    inputs: &[I],
) -> Result<(bool, Transcript)> {
    let k = schedule.players();
    if strategies.len() != k || inputs.len() != k {
        return Err(Error::Protocol(format!(
            "schedule has {k} players but got {} strategies and {} inputs",
            strategies.len(),
            inputs.len()
        )));
    }
    let mut board = Transcript::default();
    for turn in schedule.turns() {
        let mut spoken = None;
        for me in 0..k {
            let said = strategies[me].speak(me, &inputs[me], turn, &board);
            match (me == turn.speaker, said) {
                (true, Some(bits)) => spoken = Some(bits),
                (true, None) => {
                    return Err(Error::Protocol(format!(
                        "player {me} stayed silent at its turn in round {}",
                        turn.round
                    )))
                }
                (false, Some(_)) => {
                    return Err(Error::Protocol(format!(
                        "player {me} spoke at player {}'s turn in round {}",
                        turn.speaker, turn.round
                    )))
                }
                (false, None) => {}
            }
        }
        board.push(Message {
            round: turn.round,
            player: turn.speaker,
            bits: spoken.expect("speaker checked above"),
        });
    }
    let last = schedule.last_speaker();
    let answer = strategies[last].output(last, &inputs[last], &board);
    Ok((answer, board))
}

pub fn encode_bitmap(set: &IndexSet, n: usize) -> Vec<bool> {
    let mut bits = vec![false; n];
    for &x in set {
        bits[x] = true;
    }
    bits
}

pub fn decode_bitmap(bits: &[bool]) -> IndexSet {
    bits.iter()
        .enumerate()
        .filter_map(|(x, &b)| b.then_some(x))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Order {
    /// `p` rounds in the standard order, one chasing step per round.
    Forward,
    /// One round, players speaking from last to first.
    Reverse,
}

/// Each side's chase is extended by the player holding the next layer, who
/// posts the reached set as an `n`-bit bitmap.
struct SetChaser {
    n: usize,
    p: usize,
    order: Order,
}

impl SetChaser {
    fn innermost(&self, me: usize) -> usize {
        if me < self.p {
            self.p - 1
        } else {
            2 * self.p - 1
        }
    }

    /// The round in which `player` posts its bitmap.
    fn posting_round(&self, player: usize) -> usize {
        match self.order {
            Order::Forward => self.innermost(player) - player,
            Order::Reverse => 0,
        }
    }

    fn posted_set(&self, board: &Transcript, player: usize) -> IndexSet {
        let msg = board
            .message(self.posting_round(player), player)
            .expect("set message already posted");
        decode_bitmap(&msg.bits)
    }
}

impl Strategy<&SetFunctionTable> for SetChaser {
    fn speak(
        &self,
        me: usize,
        table: &&SetFunctionTable,
        turn: Turn,
        board: &Transcript,
    ) -> Option<Vec<bool>> {
        if turn.speaker != me {
            return None;
        }
        if turn.round != self.posting_round(me) {
            // nothing to add
            return Some(vec![false]);
        }
        let reached = if me == self.innermost(me) {
            IndexSet::from([0])
        } else {
            self.posted_set(board, me + 1)
        };
        let next = table.vec_apply(&reached).expect("bitmap within range");
        Some(encode_bitmap(&next, self.n))
    }

    fn output(&self, _me: usize, _table: &&SetFunctionTable, board: &Transcript) -> bool {
        let left = self.posted_set(board, 0);
        let right = self.posted_set(board, self.p);
        left.iter().any(|x| right.contains(x))
    }
}

fn run_set_chaser(inst: &IntersectScInstance, order: Order) -> (bool, Transcript) {
    let p = inst.p();
    let players = 2 * p;
    let schedule = match order {
        Order::Forward => Schedule::standard(players, p),
        Order::Reverse => Schedule::custom(players, vec![(0..players).rev().collect()]),
    }
    .expect("valid schedule");
    let chaser = SetChaser { n: inst.n(), p, order };
    let strategies: Vec<&dyn Strategy<&SetFunctionTable>> = vec![&chaser; players];
    let inputs: Vec<&SetFunctionTable> = inst
        .left()
        .funcs()
        .iter()
        .chain(inst.right().funcs())
        .collect();
    run_protocol(&schedule, &strategies, &inputs).expect("set chaser follows its schedule")
}

/// `2p` players, `p` rounds in the standard order. In round `k` players
/// `p-1-k` and `2p-1-k` post the next reachable set of their side; every other
/// turn is a 1-bit placeholder. Exact.
pub fn forward_sc_protocol(inst: &IntersectScInstance) -> (bool, Transcript) {
    run_set_chaser(inst, Order::Forward)
}

/// One round in the order `2p-1, ..., 0`; every player posts its side's next
/// reachable set. Exact, with `2p * n` bits in total.
pub fn reverse_order_sc_protocol(inst: &IntersectScInstance) -> (bool, Transcript) {
    run_set_chaser(inst, Order::Reverse)
}
