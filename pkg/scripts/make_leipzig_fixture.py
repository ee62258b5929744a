"""Regenerate the bundled Leipzig-format fixture corpus.

Writes ``src/huskysort/data/leipzig_fixture.txt``: ``<id>\\t<sentence>`` lines,
mostly English sentences drawn from a Zipf-weighted vocabulary plus a share
of Chinese sentences built from CJK ideographs.  Deterministic.
"""

import random
from pathlib import Path

VOCAB = """
the of and to a in is that for it was on with as he be at by this had not are
but from or have an they which one you were her all she there would their we
him been has when who will more no if out so said what up its about into than
them can only other new some could time these two may then do first any my now
such like our over man me even most made after also did many before must
through back years where much your way well down should because each just those
people how too little state good very make world still own see men work long
get here between both life being under never day same another know while last
might us great old year off come since against go came right used take three
states himself few house use during without again place american around however
home small found thought went say part once general high upon school every
government does going number something fact city united though less public put
think almost hand enough far took head yet system better set told nothing night
end why called didnt eyes find going look asked later knew point next program
city business give group toward young days let room president side social given
present several order national possible rather second face per among form
important often things looking early white case john become large big need four
within felt along children saw best church ever least power development light
thing seemed family interest want members mind country area others done turned
although open problem certain kind began different door thus help sense means
whole matter perhaps itself york times law human line above name example action
company hands local show whether five history gave today either act feet across
taken past quite anything seen having death experience body word half really
week field car words already information tell together college shall money
period held keep sure probably free seems real behind cannot miss political air
question making office brought whose special heard major problems ago became
federal moment study available known result street economic boy position reason
change south board individual job society areas west close turn love community
true court force full seem wife future age voice center woman control common
policy necessary following front sometimes six girl clear further land run
students provide feel party able mother music education university child effect
level stood military town short morning total outside rate figure class art
century washington north usually plan leave therefore evidence million sound
top black strong hard various says believe type value play surface soon mean
near lines table peace modern tax road red book personal process situation
minutes increase idea english alone women gone nor amount doing feeling
everything hundred material subject decided research international
internationally internationalization international understanding
understandings understand understood understandable communication
communications communicate communicated communicating relationship
relationships responsibility responsibilities administration administrative
administrator administrators particularly particular independent independently
independence environment environmental environmentally establishment established
establishing organization organizations organizational opportunity
opportunities technology technological technologies interesting interestingly
interested interests consideration considerations considerable considerably
development developments developmental developing developed significant
significantly significance performance performances representative
representatives representation constitutional constitution constitutions
professional professionals professionally individual individuals individually
individuality experimental experiment experiments experimentation
contemporary conversation conversations conversational characteristic
characteristics characteristically temperature temperatures government
governments governmental production productions productive productivity
photograph photographs photography photographer photographers television
televisions traditional tradition traditions traditionally immediately
immediate department departments everybody everywhere something sometimes
somewhere anything anywhere president presidents presidential congressional
""".split()

CJK_START, CJK_END = 0x4E00, 0x9FFF


def english_sentence(rng, weights):
    n = rng.randint(6, 22)
    words = rng.choices(VOCAB, weights=weights, k=n)
    words[0] = words[0].capitalize()
    out = []
    for w in words:
        out.append(w)
        if rng.random() < 0.08:
            out[-1] += ","
    s = " ".join(out)
    return s + rng.choice([".", ".", ".", "?", "!"])


def cjk_sentence(rng):
    chunks = []
    for _ in range(rng.randint(1, 4)):
        chunks.append("".join(chr(rng.randint(CJK_START, CJK_END))
                              for _ in range(rng.randint(2, 9))))
    return "，".join(chunks) + "。"


def main(path=None, lines=1200, cjk_share=0.15, seed=20201):
    rng = random.Random(seed)
    weights = [1 / (i + 1) ** 0.8 for i in range(len(VOCAB))]
    path = Path(path or Path(__file__).resolve().parents[1]
                / "src" / "huskysort" / "data" / "leipzig_fixture.txt")
    with open(path, "w", encoding="utf-8") as f:
        for i in range(1, lines + 1):
            s = cjk_sentence(rng) if rng.random() < cjk_share else english_sentence(rng, weights)
            f.write(f"{i}\t{s}\n")
    return path


if __name__ == "__main__":
    print(main())
