"""Writes the bundled 10k-sentence corpus for the stub perplexity scorer.

Sentences are template-generated from the fixture vocabulary so the stub
assigns fixture sentences perplexities on both sides of the default gate.
"""
import json, random, re, math, collections, pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
rng = random.Random(20260417)

fx = json.load(open(ROOT / 'fixtures' / 'squad_fixture.json'))
fixture_words = []
for a in fx['data']:
    for p in a['paragraphs']:
        for w in re.findall(r"[A-Za-z][A-Za-z'\-]*", p['context']):
            fixture_words.append(w)
fixture_caps = sorted({w for w in fixture_words if w[0].isupper()})
fixture_lower = sorted({w for w in fixture_words if w[0].islower() and len(w) > 3})

nouns = """river city country mountain lake forest island coast valley region province town village capital
harbour port bridge tower castle church cathedral palace museum library university school college hospital
railway road canal tunnel station airport market factory mine farm garden park building temple monument
king queen emperor president minister general scientist physicist chemist composer painter writer poet
engineer architect explorer merchant soldier student teacher doctor farmer sailor priest bishop
war battle treaty empire kingdom republic government army navy parliament council court law constitution
discovery invention theory experiment element planet star telescope rocket satellite orbit mission crew
symphony opera concerto song poem novel book play painting statue film album record prize award
species tree plant animal bird insect fish colony population climate temperature rainfall season glacier
volcano eruption earthquake storm flood drought ocean sea gulf basin delta desert plateau summit slope
trade economy industry company market currency tax price product export import route network system
language culture religion tradition festival century decade year month period era age history
team game player match tournament champion season record goal club league stadium
energy light water air carbon oxygen metal iron gold silver stone wood paper glass oil gas
area length height width depth size number part half side end centre border edge line point
method process structure form type kind group member family name work life death birth""".split()
adjs = """large small long short high low old new ancient modern early late major minor main first last
important famous popular national international local central northern southern eastern western
great little big wide deep rich poor strong weak heavy light dark bright cold warm hot dry wet
public private royal military political economic cultural scientific religious natural artificial
successful difficult simple complex common rare single double several many various different
traditional historical official original annual active dormant tropical coastal urban rural""".split()
verbs_past = """built founded created discovered described developed designed established opened closed
destroyed damaged restored replaced produced published wrote composed painted recorded won lost
signed joined left reached crossed visited studied taught led ruled defeated captured held moved
began started completed finished continued remained became named called used carried connected
covered contained included reported showed found noticed measured estimated increased reduced""".split()
verbs_pres = """is has contains includes connects covers holds carries supports produces provides remains
forms lies runs flows rises stands attracts receives requires uses""".split()
passive = "built founded created discovered described developed designed established opened closed destroyed damaged restored replaced produced published composed painted recorded signed visited studied led ruled defeated captured held moved completed named called used carried connected covered reported found measured estimated".split()
preps = "in on at near from to with by for of during after before across along through under over between".split()
months = "January February March April May June July August September October November December".split()

def cap(s): return s[0].upper() + s[1:]
def year(): return str(rng.choice([rng.randint(1000, 2020), rng.randint(1800, 2020), rng.randint(1900, 2020)]))
def num():
    r = rng.random()
    if r < 0.4: return str(rng.randint(2, 99))
    if r < 0.7: return f"{rng.randint(1, 999)},{rng.randint(0, 999):03d}"
    if r < 0.85: return f"{rng.randint(1, 99)}.{rng.randint(0, 9)}"
    return str(rng.randint(100, 999))
def noun():
    if rng.random() < 0.4: return rng.choice(fixture_lower)
    return rng.choice(nouns)
def adj(): return rng.choice(adjs)
def name():
    if rng.random() < 0.75: return rng.choice(fixture_caps)
    return cap(rng.choice(nouns))
def np():
    r = rng.random()
    if r < 0.35: return f"the {noun()}"
    if r < 0.6: return f"the {adj()} {noun()}"
    if r < 0.75: return f"a {adj()} {noun()}"
    if r < 0.9: return f"the {noun()} of {name()}"
    return name()

templates = [
    lambda: f"{cap(np())} was {rng.choice(passive)} in {year()}.",
    lambda: f"{cap(np())} {rng.choice(verbs_pres)} {np()} {rng.choice(preps)} {np()}.",
    lambda: f"In {year()}, {np()} {rng.choice(verbs_past)} {np()}.",
    lambda: f"{cap(np())} {rng.choice(verbs_past)} {np()}, and {np()} {rng.choice(verbs_past)} {np()}.",
    lambda: f"It is one of the {adj()}est {noun()}s in the world." if rng.random() < 0.2 else f"It is one of the most {adj()} {rng.choice(nouns)}s in the world.",
    lambda: f"The {noun()} is about {num()} {rng.choice(['metres', 'kilometres', 'miles', 'years', 'people'])} {rng.choice(['long', 'high', 'old', 'wide'])}.",
    lambda: f"{name()} {rng.choice(verbs_past)} the {noun()} {rng.choice(preps)} {np()}.",
    lambda: f"There are {num()} {rng.choice(nouns)}s in {np()}.",
    lambda: f"{cap(np())} {rng.choice(verbs_pres)} {rng.choice(preps)} {np()}, which {rng.choice(verbs_pres)} {np()}.",
    lambda: f"The {noun()} was {rng.choice(passive)} by {name()} {rng.choice(['in', 'during', 'after'])} {rng.choice([year(), 'the war', 'the ' + str(rng.randint(12, 20)) + 'th century'])}.",
    lambda: f"On {rng.randint(1, 28)} {rng.choice(months)} {year()}, {np()} {rng.choice(verbs_past)} {np()}.",
    lambda: f"{cap(np())} and {np()} {rng.choice(verbs_past)} {np()} {rng.choice(preps)} {np()}.",
    lambda: f"This {noun()} {rng.choice(verbs_pres)} {np()}.",
    lambda: f"{cap(np())} {rng.choice(verbs_past)} {np()} because {np()} {rng.choice(verbs_past)} {np()}.",
    lambda: f"About {rng.randint(2, 99)}% of {np()} {rng.choice(verbs_pres)} {np()}.",
    lambda: f"{name()} was a {adj()} {noun()} who {rng.choice(verbs_past)} {np()}.",
    lambda: f"The {adj()} {noun()} {rng.choice(verbs_past)} {rng.choice(preps)} {np()} for {num()} years.",
    lambda: f"{cap(np())} is {rng.choice(['located', 'found', 'situated', 'known'])} {rng.choice(preps)} {np()}.",
]

fixture_token_runs = [w for w in fixture_words]
def window():
    k = rng.randint(4, 8)
    i = rng.randrange(0, len(fixture_token_runs) - k)
    return " ".join(fixture_token_runs[i:i + k])
templates += [
    lambda: f"{cap(np())} {rng.choice(verbs_past)} {window()}.",
    lambda: f"{cap(window())} {rng.choice(preps)} {np()}.",
    lambda: f"In {year()}, {window()}.",
]
templates += templates[-3:] * 3

lines = []
while len(lines) < 10000:
    s = rng.choice(templates)()
    s = re.sub(r"\s+", " ", s).strip()
    lines.append(s)
open(ROOT / 'crates' / 'core' / 'data' / 'lm_fixture.txt', 'w').write("\n".join(lines) + "\n")

# Mirror of the library tokenizer + unigram model to check the spread
def tokenize(text):
    out = []
    for chunk in text.split():
        idx = [i for i, c in enumerate(chunk) if c.isalnum()]
        if not idx:
            out.extend(chunk); continue
        f, l = idx[0], idx[-1] + 1
        out.extend(chunk[:f]); out.append(chunk[f:l]); out.extend(chunk[l:])
    return [t.lower() for t in out]
counts = collections.Counter()
for s in lines: counts.update(tokenize(s))
N = sum(counts.values()); V = len(counts) + 1
def ppl(text):
    t = tokenize(text)
    h = -sum(math.log2((counts.get(w, 0) + 1) / (N + V)) for w in t) / len(t)
    return 2 ** h
sents = []
for a in fx['data']:
    for p in a['paragraphs']:
        sents += re.split(r'(?<=[.!?])\s+(?=[A-Z])', p['context'])
ps = sorted(ppl(s) for s in sents)
inside = sum(50 <= p <= 600 for p in ps)
print("N", N, "V", V, "sentences", len(sents), "in range", inside, "min", ps[0], "median", ps[len(ps)//2], "max", ps[-1])
print([round(p) for p in ps[::10]])
