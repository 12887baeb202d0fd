use chasebench::chasing::{sample_uniform_intersect_sc, IntersectScInstance};
use chasebench::protocol::{
    decode_bitmap, encode_bitmap, forward_sc_protocol, reverse_order_sc_protocol, run_protocol, Schedule, Strategy,
    Transcript, Turn,
};
use chasebench::seed::trial_rng;
use chasebench::Error;

#[test]
fn protocols_agree_with_eval_and_count_bits() {
    for i in 0..2000 {
        let mut rng = trial_rng(31, i);
        let n = 1 + (i as usize % 12);
        let p = 1 + (i as usize % 4);
        let inst = sample_uniform_intersect_sc(n, p, 3, &mut rng);
        let (fa, ft) = forward_sc_protocol(&inst);
        let (ra, rt) = reverse_order_sc_protocol(&inst);
        assert_eq!(fa, inst.eval());
        assert_eq!(ra, inst.eval());
        assert_eq!(ft.rounds_used(), p);
        assert_eq!(rt.rounds_used(), 1);
        assert_eq!(rt.total_bits(), 2 * p * n);
        // every turn is a bitmap or a 1-bit placeholder
        assert_eq!(ft.messages().len(), 2 * p * p);
        assert_eq!(ft.total_bits(), 2 * p * n + (2 * p * p - 2 * p));
    }
}

#[test]
fn forward_dump_of_identity() {
    let (answer, t) = forward_sc_protocol(&IntersectScInstance::identity(3, 2));
    assert!(answer);
    assert_eq!(t.dump(), "0 0 bits:0\n0 1 bits:100\n0 2 bits:0\n0 3 bits:100\n1 0 bits:100\n1 1 bits:0\n1 2 bits:100\n1 3 bits:0\n");
}

#[test]
fn bitmap_round_trip() {
    let s = [0usize, 3, 4].into_iter().collect();
    let bits = encode_bitmap(&s, 6);
    assert_eq!(bits, [true, false, false, true, true, false]);
    assert_eq!(decode_bitmap(&bits), s);
}

#[test]
fn schedules_are_validated() {
    assert!(Schedule::standard(0, 1).is_err());
    assert!(Schedule::standard(2, 0).is_err());
    assert!(Schedule::custom(2, vec![vec![0, 0]]).is_err());
    assert!(Schedule::custom(2, vec![vec![2]]).is_err());
    let s = Schedule::custom(3, vec![vec![2, 0], vec![1]]).unwrap();
    assert_eq!(s.rounds(), 2);
    assert_eq!(s.last_speaker(), 1);
}

struct Chatty;

impl Strategy<u8> for Chatty {
    fn speak(&self, _me: usize, _input: &u8, _turn: Turn, _board: &Transcript) -> Option<Vec<bool>> {
        Some(vec![true])
    }

    fn output(&self, _me: usize, _input: &u8, _board: &Transcript) -> bool {
        true
    }
}

struct Parity;

impl Strategy<u8> for Parity {
    fn speak(&self, me: usize, input: &u8, turn: Turn, board: &Transcript) -> Option<Vec<bool>> {
        (turn.speaker == me).then(|| {
            let prev = board.messages().last().is_some_and(|m| m.bits[0]);
            vec![prev ^ (*input == 1)]
        })
    }

    fn output(&self, _me: usize, _input: &u8, board: &Transcript) -> bool {
        board.messages().last().unwrap().bits[0]
    }
}

#[test]
fn runner_enforces_turns_and_counts_bits() {
    let s = Schedule::standard(3, 1).unwrap();
    let chatty: Vec<&dyn Strategy<u8>> = vec![&Chatty; 3];
    assert!(matches!(run_protocol(&s, &chatty, &[0, 0, 0]), Err(Error::Protocol(_))));
    let parity: Vec<&dyn Strategy<u8>> = vec![&Parity; 3];
    assert!(matches!(run_protocol(&s, &parity, &[0, 1]), Err(Error::Protocol(_))));
    let (answer, t) = run_protocol(&s, &parity, &[1, 0, 1]).unwrap();
    assert!(!answer);
    assert_eq!(t.total_bits(), 3);
    assert_eq!(t.message(0, 1).unwrap().bits, [true]);
    assert_eq!(t.dump(), "0 0 bits:1\n0 1 bits:1\n0 2 bits:0\n");
}
