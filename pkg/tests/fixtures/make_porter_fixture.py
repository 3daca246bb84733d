"""Regenerate porter_pairs.tsv, the stemmer reference fixture.

The vocabulary is a deterministic expansion of common English roots with
suffixes that exercise every rule family, plus hand-picked edge cases.
Expected stems are frozen from the independent rule-table interpreter in
tests/oracles.py after cross-validating it against the production stemmer;
a disagreement between the two implementations aborts generation.

Run from the repository root:  python3 tests/fixtures/make_porter_fixture.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from oracles import oracle_stem  # noqa: E402

from scholarrec.porter import stem  # noqa: E402

ROOTS = """
abandon absorb accept access accident account accuse ach achieve acid act
adapt add address adjust admire admit adopt adore advance advise affect
agree aid aim alarm allow amaze amuse analog anger announce annoy answer
appear applaud apply approach approve argue arm arrange arrest arrive ask
assert assess assign assist assume attach attack attempt attend attract
avoid awake balance ban band bang bank bare bargain base bat bathe battle
bear beat beg behave believe belong bend benefit bet betray bid bind bite
blame blast bleed bless blind block bloom blot blush board boast boil bolt
bomb book boost border borrow bounce bow box brake branch brand breathe
breed bribe brush bubble bud budget build bump burn burst bury buzz calm
camp cap care caress carry carve cat cause cease celebrate center chain
challenge chance change charge charm chase chat cheat check cheer chew
chill chip chop claim clap class clean clear climb cling clip close coach
coil collect color comb combine command comment commit compare compete
complain complete compute conceive concern conclude condition conduct
confess confirm conform confuse connect consider consist consult consume
contain continue contract control convert convince cook cool copy correct
cough count cover crack crash crawl create credit creep critic cross crowd
crush cry cure curl curve cycle damage dance dare dart dash deal debate
decay decide declare decorate decrease dedicate defend define deliver
demand deny depend describe desert deserve design desire destroy detect
determine develop differ digest digitize direct disagree disarm discover
discuss dislike dismiss display dive divide doubt drag drain dream dress
drift drip drop drown drum dry dust earn ease edit educate elect embarrass
employ empty enclose encourage end engage enjoy enter entertain escape
estimate examine excite excuse execute exercise exist expand expect explain
explode explore express extend face fade fail fall fancy farm fasten fax
fear feast feed fetch file fill film fire fit fix fizz flap flash float
flood flow flower fold follow fool force form fortify found frame frighten
fry gather gaze general glow glue govern grab grant grate grease greet
grind grip groan guard guess guide hammer hand handle hang happen harass
harm hate haunt head heal heap heat help hesitate hide hiss hit hold hook
hop hope howl hug hum hunt hurry hurt identify ignore imagine impress
improve include increase indicate inform inject injure instruct intend
interest interfere introduce invent invite iron irritate itch jail jam
jog join joke judge juggle jump justify kick kill kiss kneel knit knock
knot label land last laugh launch learn level license lick lie lift light
list listen live load lock log look love man manage march mark marry
match mate matter measure meddle melt memorize mend mention mess milk
mine miss mix moan modernize moor motor move mug multiply murder nail
name nation need nest nod normal note notice number obey object observe
obtain occur offend offer open operate oppose order organize own pack
paint pardon park part pass paste pat pause peck pedal peel perform
permit persuade pick pinch pine place plan plant play plead please plot
plug point poke polish ponder pop possess post pour practise pray preach
precede predicate prefer prepare present preserve press pretend prevent
print probe produce profit program promise propose protect provide pull
pump punch puncture punish push question queue rabbit race radiate rain
raise rate rational reach realize receive recognize record reduce refer
reflect refuse regret reign reject relate relax release rely remain
remember remind remove repair repeat replace reply report request rescue
resist respond rest retire return rhyme rinse rise risk rob rock roll rot
rub ruin rule run rush sack sail satisfy save saw scare scatter scold
scorch scrape scratch scream screw scrub seal search season seat secure
see sense separate serve settle sew shade shake share shave shelter shine
shiver shock shop show shrug sigh sign signal sin sip site size ski skip
slap slip slow smash smell smile smoke snatch sneeze sniff snore snow
soak soothe sound spare spark sparkle spell spill spoil spot spray
sprout squash squeak squeal squeeze stamp stand star stare start state
stay steer step stir stitch stop store storm strap strengthen stretch
strip stroke stuff subtract succeed suck suffer suggest suit supply
support suppose surprise surround suspect suspend swear sweat sweep
swim swing switch tan tame tap taste teach tease telephone tempt tend
terrify test thank thaw tick tie time tip tire touch tour tow trace
trade train transport trap travel treat tremble trick trip trot trouble
trust try tug tumble turn twist type understand undo undress unite
unlock unpack untidy use vanish visit wail wait walk wander want warm
warn wash waste watch water wave wear weigh welcome whine whip whirl
whisper whistle win wink wipe wish wonder work worry wrap wreck wrestle
yawn yell zip zoom
""".split()

SUFFIXES = (
    "", "s", "es", "ed", "ing", "ings", "er", "ers", "ly", "ness",
    "ful", "fully", "fulness", "ous", "ously", "ousness", "ive",
    "ively", "iveness", "ize", "izes", "ized", "izing", "izer",
    "ization", "izations", "ation", "ations", "ational", "ment",
    "ments", "ement", "able", "ible", "ably", "al", "ally", "ality",
    "alities", "alism", "alize", "ant", "ent", "ance", "ence", "ancy",
    "ency", "ion",
)

EXTRA_SUFFIXES = (
    "y", "ys", "ies", "ied", "ier", "iest", "ily", "iness", "icate",
    "icative", "ical", "ically", "icity", "iciti", "aliti", "iviti",
    "biliti", "bli", "eli", "entli", "ousli", "alli", "logi", "logy",
    "logies", "ator", "ators", "ism", "isms", "ist", "ists", "ful",
    "eed", "eeds",
)

EDGE_CASES = (
    "a", "i", "s", "y", "is", "as", "by", "be", "on", "tv", "ax",
    "sky", "die", "lie", "tie", "ties", "dies", "spy", "spies", "fly",
    "flies", "cry", "cries", "dry", "toy", "toys", "syzygy", "rhythm",
    "myth", "gypsy", "hymn", "crypt", "lynx", "tryst", "pygmy",
    "agreed", "feed", "bled", "bleed", "sing", "sged", "eed", "ied",
    "oed", "sses", "caresses", "ponies", "caress", "cats", "plastered",
    "motoring", "conflated", "troubled", "sized", "hopping", "tanned",
    "falling", "hissing", "fizzed", "failing", "filing", "happy",
    "relational", "conditional", "rational", "valenci", "hesitanci",
    "digitizer", "conformabli", "radicalli", "differentli", "vileli",
    "analogousli", "vietnamization", "predication", "operator",
    "feudalism", "decisiveness", "hopefulness", "callousness",
    "formaliti", "sensitiviti", "sensibiliti", "triplicate",
    "formative", "formalize", "electriciti", "electrical", "hopeful",
    "goodness", "revival", "allowance", "inference", "airliner",
    "gyroscopic", "adjustable", "defensible", "irritant", "replacement",
    "adjustment", "dependent", "adoption", "homologou", "communism",
    "activate", "angulariti", "homologous", "effective", "bowdlerize",
    "probate", "rate", "cease", "controll", "roll", "control",
    "elements", "element", "2nd", "x86", "3d", "42", "a1b2", "naive",
    "oscillators", "generalizations", "oscillator", "generalization",
    "archaeology", "ecology", "geology", "analogy", "analogies",
    "maximum", "minimum", "news", "proceed", "exceed", "succeed",
    "deed", "deeds", "creed", "indeed", "speed", "knees", "trees",
    "bias", "atlas", "gas", "this", "was", "has", "its", "their",
    "theirs", "yours", "abyss", "byss", "crass", "press", "presses",
)


def build_vocabulary() -> list[str]:
    vocab = set(EDGE_CASES)
    for root in ROOTS:
        for suffix in SUFFIXES:
            vocab.add(root + suffix)
    for root in ROOTS[::2]:
        for suffix in EXTRA_SUFFIXES:
            vocab.add(root + suffix)
    return sorted(vocab)


def main() -> None:
    vocab = build_vocabulary()
    mismatches = [w for w in vocab if stem(w) != oracle_stem(w)]
    if mismatches:
        sample = ", ".join(mismatches[:20])
        raise SystemExit(
            f"stemmer implementations disagree on {len(mismatches)} words: {sample}"
        )
    out = Path(__file__).with_name("porter_pairs.tsv")
    with out.open("w", encoding="utf-8") as handle:
        for word in vocab:
            handle.write(f"{word}\t{oracle_stem(word)}\n")
    print(f"wrote {len(vocab)} pairs to {out}")


if __name__ == "__main__":
    main()
