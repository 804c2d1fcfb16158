#!/usr/bin/env python3
"""Regenerates the bundled data files and the geo fixture table.

Outputs are deterministic; the repository ships the frozen results, this
script documents how they were produced and lets them be rebuilt.

  data/vader_lexicon.tsv      curated sentiment lexicon (word TAB valence)
  data/emotion_lexicon.tsv    word/affect/flag association table
  data/world_cities.csv       miniature gazetteer (published-dataset header)
  data/sample_tweets.jsonl    500-record synthetic tweet corpus
  data/sample_cases.csv       cumulative confirmed/deaths/recovered table
  tests/fixtures/cities_abbrev.csv   gazetteer variant with abbreviations
  tests/fixtures/geo_cases.csv       50 location strings with expected outcomes
"""

import csv
import json
import os
import random
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA = os.path.join(ROOT, "data")
FIXTURES = os.path.join(ROOT, "tests", "fixtures")

# ---------------------------------------------------------------------------
# Sentiment lexicon
# ---------------------------------------------------------------------------

# Words that carry special meaning inside the scoring algorithm and therefore
# must never appear as lexicon entries.
RESERVED = {
    # negators
    "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt",
    "ain't", "aren't", "can't", "couldn't", "daren't", "didn't", "doesn't",
    "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt", "mustnt", "neither",
    "don't", "hadn't", "hasn't", "haven't", "isn't", "mightn't", "mustn't",
    "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing",
    "nowhere", "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent",
    "oughtn't", "shan't", "shouldn't", "uh-uh", "wasn't", "weren't", "without",
    "wont", "wouldnt", "won't", "wouldn't", "rarely", "seldom", "despite",
    # degree modifiers
    "absolutely", "amazingly", "awfully", "completely", "considerable",
    "considerably", "decidedly", "deeply", "effing", "enormous", "enormously",
    "entirely", "especially", "exceptional", "exceptionally", "extreme",
    "extremely", "fabulously", "flipping", "flippin", "frackin", "fracking",
    "fricking", "frickin", "frigging", "friggin", "fully", "fuckin", "fucking",
    "fuggin", "fugging", "greatly", "hella", "highly", "hugely", "incredible",
    "incredibly", "intensely", "major", "majorly", "more", "most",
    "particularly", "purely", "quite", "really", "remarkably", "so",
    "substantially", "thoroughly", "total", "totally", "tremendous",
    "tremendously", "uber", "unbelievably", "unusually", "utter", "utterly",
    "very", "almost", "barely", "hardly", "kinda", "kindof", "kind-of",
    "less", "little", "marginal", "marginally", "occasional", "occasionally",
    "partly", "scarce", "scarcely", "slight", "slightly", "somewhat", "sorta",
    "sortof", "sort-of",
    # rule trigger words
    "least", "at", "of", "or", "doubt", "this", "the", "but", "enough",
}

LEXICON = {
    # positive
    "good": 1.9, "great": 3.1, "awesome": 3.1, "amazing": 2.8,
    "excellent": 2.7, "fantastic": 2.6, "wonderful": 2.7, "love": 3.2,
    "loved": 2.9, "loves": 2.7, "loving": 2.9, "like": 1.5, "liked": 1.6,
    "likes": 1.5, "best": 3.2, "better": 1.9, "happy": 2.7, "happiness": 2.6,
    "happier": 2.4, "joy": 2.8, "joyful": 2.9, "glad": 2.0, "hope": 1.9,
    "hopeful": 2.3, "hoping": 1.8, "optimistic": 2.4, "thank": 1.9,
    "thanks": 1.9, "thankful": 2.7, "grateful": 3.0, "gratitude": 2.6,
    "appreciate": 2.3, "appreciated": 2.1, "support": 1.7, "supported": 1.8,
    "supportive": 2.2, "care": 2.2, "caring": 2.2, "kind": 2.4, "safe": 1.9,
    "safely": 1.9, "safety": 1.8, "heal": 2.4, "healed": 2.3, "healing": 2.2,
    "healthy": 2.3, "recover": 1.8, "recovered": 1.9, "recovery": 1.9,
    "improve": 1.9, "improved": 2.1, "improving": 1.9, "win": 2.8,
    "winning": 2.4, "won": 2.7, "success": 2.7, "successful": 2.6,
    "strong": 2.3, "stronger": 2.4, "brave": 2.2, "courage": 2.2,
    "calm": 1.3, "relief": 1.9, "relieved": 2.1, "smile": 2.3,
    "smiling": 2.1, "laugh": 2.6, "laughing": 2.2, "fun": 2.3, "funny": 1.9,
    "enjoy": 2.2, "enjoyed": 2.3, "beautiful": 2.9, "nice": 1.8,
    "sweet": 2.0, "cool": 1.3, "perfect": 2.7, "brilliant": 2.8,
    "smart": 1.7, "clever": 2.0, "handsome": 2.2, "pretty": 2.2,
    "celebrate": 2.7, "celebration": 2.7, "blessed": 2.9, "blessing": 2.7,
    "friend": 2.2, "friendly": 2.2, "friends": 2.1, "help": 1.7,
    "helpful": 1.9, "helped": 1.6, "helps": 1.6, "hero": 2.6, "heroes": 2.4,
    "honor": 2.4, "inspire": 2.5, "inspired": 2.3, "inspiring": 2.7,
    "interesting": 1.7, "interested": 1.6, "kiss": 1.8, "peace": 2.5,
    "peaceful": 2.4, "pleasant": 2.3, "pleased": 2.2, "pleasure": 2.6,
    "positive": 2.3, "proud": 2.1, "respect": 2.1, "satisfied": 2.0,
    "secure": 1.6, "special": 1.7, "splendid": 2.9, "strength": 2.2,
    "superb": 3.1, "terrific": 2.9, "thrilled": 3.0, "triumph": 2.6,
    "victory": 2.6, "warm": 1.6, "welcome": 2.0, "wise": 2.1, "worthy": 1.9,
    "yes": 1.7, "yeah": 1.2, "yay": 2.4, "wow": 2.8, "congratulations": 2.9,
    "congrats": 2.6, "delight": 2.9, "delighted": 2.9, "delicious": 2.5,
    "excited": 2.4, "eager": 1.6, "ecstatic": 3.3, "elated": 3.0,
    "encourage": 2.0, "encouraged": 2.0, "fabulous": 2.9, "faith": 1.9,
    "faithful": 2.3, "favorite": 2.0, "fine": 0.8, "flawless": 2.9,
    "fortunate": 2.4, "generous": 2.3, "gentle": 1.9, "gift": 1.9,
    "glory": 2.5, "gorgeous": 2.9, "grand": 2.2, "honest": 2.2,
    "honesty": 2.3, "loyal": 2.3, "reliable": 1.9, "trust": 1.9,
    "trusted": 2.1, "vaccine": 1.3, "cure": 2.0, "cured": 2.1,
    # negative
    "bad": -2.5, "worse": -2.1, "worst": -3.1, "terrible": -2.1,
    "horrible": -2.5, "awful": -2.0, "hate": -2.7, "hated": -2.9,
    "hates": -2.3, "hating": -2.6, "sad": -2.1, "sadness": -2.1,
    "sadly": -1.9, "unhappy": -1.8, "depressed": -2.3, "depressing": -2.2,
    "depression": -2.7, "cry": -2.1, "crying": -2.2, "cried": -1.9,
    "tears": -1.2, "fear": -2.2, "feared": -2.0, "fearful": -2.5,
    "fears": -1.9, "afraid": -2.2, "scared": -2.2, "scary": -2.2,
    "terror": -3.1, "terrified": -3.0, "panic": -2.6, "panicked": -2.4,
    "anxious": -1.9, "anxiety": -2.4, "worry": -1.9, "worried": -1.8,
    "worrying": -1.9, "stress": -1.9, "stressed": -2.0, "stressful": -2.1,
    "angry": -2.3, "anger": -2.7, "mad": -2.4, "furious": -2.7,
    "rage": -2.9, "hostile": -2.4, "annoyed": -1.8, "annoying": -1.9,
    "irritated": -2.0, "disgust": -2.6, "disgusted": -2.4,
    "disgusting": -2.7, "gross": -2.1, "nasty": -2.6, "sick": -2.3,
    "sickness": -2.1, "ill": -1.8, "illness": -1.9, "disease": -1.9,
    "diseases": -1.8, "infected": -1.9, "infection": -1.9, "plague": -2.6,
    "pain": -2.5, "painful": -2.4, "hurt": -2.4, "hurts": -2.2,
    "hurting": -2.3, "suffer": -2.4, "suffered": -2.1, "suffering": -2.4,
    "die": -2.9, "died": -2.9, "dies": -2.8, "dying": -3.0, "dead": -3.3,
    "death": -2.9, "deaths": -2.7, "kill": -3.7, "killed": -3.4,
    "killing": -3.4, "murder": -3.7, "crisis": -3.1, "danger": -2.4,
    "dangerous": -2.5, "destroy": -2.7, "destroyed": -2.8,
    "destruction": -2.9, "disaster": -3.1, "devastating": -2.8,
    "doom": -2.4, "dread": -2.5, "evil": -3.4, "fail": -2.5, "failed": -2.3,
    "failing": -2.2, "failure": -2.6, "fake": -1.9, "false": -1.4,
    "fault": -1.9, "fight": -1.6, "fighting": -1.7, "fired": -2.6,
    "lost": -1.3, "lose": -1.7, "losing": -1.8, "loss": -1.9,
    "lonely": -2.2, "loneliness": -2.4, "alone": -1.0, "miserable": -2.8,
    "misery": -2.9, "mess": -1.6, "mistake": -1.7, "mourn": -2.4,
    "mourning": -2.3, "negative": -2.2, "nervous": -1.9, "nightmare": -2.7,
    "poor": -2.1, "problem": -1.7, "problems": -1.8, "risk": -1.1,
    "risky": -1.4, "ruin": -2.6, "ruined": -2.7, "shame": -2.1,
    "shit": -2.6, "shitty": -2.6, "stupid": -2.4, "dumb": -2.3,
    "threat": -2.4, "threats": -2.2, "tragedy": -3.0, "tragic": -2.9,
    "trouble": -1.9, "troubled": -2.0, "ugly": -2.3, "unsafe": -1.9,
    "upset": -1.9, "victim": -1.6, "victims": -1.7, "violence": -3.1,
    "violent": -2.9, "warning": -1.4, "weak": -1.9, "weakness": -1.8,
    "wrong": -2.1, "broken": -2.3, "ass": -2.5, "bomb": -2.9, "war": -2.9,
    "enemy": -2.4, "emergency": -2.2, "severe": -2.0, "severely": -2.2,
    "chaos": -2.2, "collapse": -2.2, "corrupt": -3.0, "corruption": -2.9,
    "crime": -2.5, "criminal": -2.5, "cruel": -2.9, "damage": -2.0,
    "damaged": -2.1, "defeat": -2.0, "denied": -1.7, "deny": -1.4,
    "desperate": -2.0, "despair": -2.9, "distress": -2.4, "beating": -1.7,
    "blame": -1.9, "grief": -2.6, "quarantine": -1.0, "lockdown": -1.1,
    "outbreak": -1.9, "isolation": -1.6, "no": -1.2,
    # emoticons (kept whole by tokenization because stripping punctuation
    # leaves at most two characters)
    ":)": 2.0, ":-)": 2.1, ":d": 2.9, ":(": -1.9, ":-(": -2.2, ";)": 1.4,
    ":/": -1.4, ":p": 1.3, "<3": 2.9, ":'(": -2.2,
}


def write_lexicon():
    bad = sorted(set(LEXICON) & RESERVED)
    assert not bad, f"reserved words in lexicon: {bad}"
    assert all(-4.0 <= v <= 4.0 and v != 0.0 for v in LEXICON.values())
    assert all(w == w.lower() for w in LEXICON)
    with open(os.path.join(DATA, "vader_lexicon.tsv"), "w", newline="\n") as f:
        for word in sorted(LEXICON):
            f.write(f"{word}\t{LEXICON[word]}\n")


# ---------------------------------------------------------------------------
# Emotion lexicon (word TAB affect TAB flag, ten affect rows per word)
# ---------------------------------------------------------------------------

AFFECTS = ["anger", "anticipation", "disgust", "fear", "joy", "negative",
           "positive", "sadness", "surprise", "trust"]

EMOTION_WORDS = {
    "virus": ["fear", "negative"],
    "disease": ["fear", "sadness", "negative"],
    "death": ["fear", "sadness", "negative"],
    "die": ["fear", "sadness", "negative"],
    "dying": ["fear", "sadness", "negative"],
    "panic": ["fear", "negative"],
    "scared": ["fear", "negative"],
    "afraid": ["fear", "negative"],
    "fear": ["fear", "negative"],
    "fearful": ["fear", "negative"],
    "danger": ["fear", "negative"],
    "dangerous": ["fear", "negative"],
    "infection": ["fear", "negative"],
    "infected": ["fear", "negative"],
    "outbreak": ["fear", "surprise", "negative"],
    "pandemic": ["fear", "sadness", "negative"],
    "hospital": ["fear", "trust"],
    "emergency": ["fear", "surprise", "negative"],
    "crisis": ["fear", "sadness", "negative"],
    "nightmare": ["fear", "negative"],
    "threat": ["fear", "anger", "negative"],
    "terror": ["fear", "anger", "negative"],
    "risk": ["fear", "anticipation", "negative"],
    "warning": ["fear", "anticipation", "negative"],
    "quarantine": ["fear", "sadness", "negative"],
    "lockdown": ["fear", "sadness", "negative"],
    "isolation": ["fear", "sadness", "negative"],
    "worry": ["fear", "sadness", "anticipation", "negative"],
    "worried": ["fear", "sadness", "negative"],
    "anxiety": ["fear", "sadness", "negative"],
    "doctor": ["trust", "positive"],
    "nurse": ["trust", "positive"],
    "government": ["trust", "fear"],
    "police": ["trust", "fear"],
    "vaccine": ["trust", "anticipation", "positive"],
    "science": ["trust", "positive"],
    "scientist": ["trust", "anticipation", "positive"],
    "medicine": ["trust", "positive"],
    "trust": ["trust", "positive"],
    "honest": ["trust", "joy", "positive"],
    "loyal": ["trust", "positive"],
    "faith": ["trust", "joy", "anticipation", "positive"],
    "safe": ["trust", "joy", "positive"],
    "secure": ["trust", "joy", "positive"],
    "protect": ["trust", "positive"],
    "protection": ["trust", "positive"],
    "official": ["trust"],
    "team": ["trust", "positive"],
    "community": ["trust", "positive"],
    "together": ["trust", "joy", "positive"],
    "support": ["trust", "joy", "positive"],
    "help": ["trust", "joy", "positive"],
    "guidance": ["trust", "positive"],
    "happy": ["joy", "positive"],
    "joy": ["joy", "positive"],
    "love": ["joy", "trust", "positive"],
    "celebrate": ["joy", "surprise", "positive"],
    "smile": ["joy", "positive"],
    "laugh": ["joy", "surprise", "positive"],
    "fun": ["joy", "anticipation", "positive"],
    "play": ["joy", "anticipation", "positive"],
    "win": ["joy", "anticipation", "positive"],
    "success": ["joy", "anticipation", "positive"],
    "holiday": ["joy", "anticipation", "positive"],
    "gift": ["joy", "surprise", "positive"],
    "friend": ["joy", "trust", "positive"],
    "family": ["joy", "trust", "positive"],
    "hope": ["joy", "trust", "anticipation", "positive"],
    "recovery": ["joy", "anticipation", "positive"],
    "healing": ["joy", "trust", "positive"],
    "birthday": ["joy", "surprise", "positive"],
    "music": ["joy", "positive"],
    "sunshine": ["joy", "positive"],
    "sad": ["sadness", "negative"],
    "cry": ["sadness", "negative"],
    "crying": ["sadness", "negative"],
    "loss": ["sadness", "negative"],
    "lost": ["sadness", "negative"],
    "lonely": ["sadness", "negative"],
    "grief": ["sadness", "negative"],
    "mourn": ["sadness", "negative"],
    "miss": ["sadness", "negative"],
    "fail": ["sadness", "anger", "negative"],
    "failure": ["sadness", "anger", "negative"],
    "depression": ["sadness", "negative"],
    "dark": ["sadness", "fear", "negative"],
    "pain": ["sadness", "fear", "negative"],
    "hurt": ["sadness", "anger", "negative"],
    "suffer": ["sadness", "fear", "negative"],
    "suffering": ["sadness", "fear", "negative"],
    "funeral": ["sadness", "negative"],
    "tears": ["sadness", "negative"],
    "goodbye": ["sadness", "negative"],
    "angry": ["anger", "negative"],
    "rage": ["anger", "negative"],
    "fight": ["anger", "fear", "negative"],
    "war": ["anger", "fear", "sadness", "negative"],
    "hate": ["anger", "disgust", "negative"],
    "kill": ["anger", "fear", "negative"],
    "attack": ["anger", "fear", "negative"],
    "violence": ["anger", "fear", "negative"],
    "furious": ["anger", "negative"],
    "mad": ["anger", "negative"],
    "blame": ["anger", "disgust", "negative"],
    "insult": ["anger", "disgust", "negative"],
    "protest": ["anger", "anticipation", "negative"],
    "disgust": ["disgust", "negative"],
    "gross": ["disgust", "negative"],
    "nasty": ["disgust", "anger", "negative"],
    "sick": ["disgust", "sadness", "negative"],
    "rotten": ["disgust", "negative"],
    "filthy": ["disgust", "negative"],
    "vomit": ["disgust", "negative"],
    "trash": ["disgust", "negative"],
    "corrupt": ["disgust", "anger", "negative"],
    "shame": ["disgust", "sadness", "negative"],
    "surprise": ["surprise", "joy", "positive"],
    "sudden": ["surprise"],
    "shock": ["surprise", "fear", "negative"],
    "unexpected": ["surprise"],
    "alarm": ["surprise", "fear", "negative"],
    "amazing": ["surprise", "joy", "positive"],
    "wow": ["surprise", "joy", "positive"],
    "miracle": ["surprise", "joy", "trust", "positive"],
    "wait": ["anticipation"],
    "expect": ["anticipation"],
    "plan": ["anticipation", "trust"],
    "future": ["anticipation"],
    "soon": ["anticipation"],
    "tomorrow": ["anticipation"],
    "prepare": ["anticipation", "trust"],
    "ready": ["anticipation", "trust", "positive"],
    "predict": ["anticipation"],
    "forecast": ["anticipation", "trust"],
    "eager": ["anticipation", "joy", "positive"],
    "vote": ["anticipation", "trust"],
    "news": ["anticipation"],
}


def write_emotion_lexicon():
    with open(os.path.join(DATA, "emotion_lexicon.tsv"), "w", newline="\n") as f:
        for word in sorted(EMOTION_WORDS):
            assocs = set(EMOTION_WORDS[word])
            assert assocs <= set(AFFECTS), word
            for affect in AFFECTS:
                flag = 1 if affect in assocs else 0
                f.write(f"{word}\t{affect}\t{flag}\n")


# ---------------------------------------------------------------------------
# Gazetteers
# ---------------------------------------------------------------------------

# name, country, subcountry, geonameid
CITY_ROWS = [
    ("Mumbai", "India", "Maharashtra", 1275339),
    ("Delhi", "India", "Delhi", 1273294),
    ("Bengaluru", "India", "Karnataka", 1277333),
    ("Chennai", "India", "Tamil Nadu", 1264527),
    ("Hyderabad", "India", "Telangana", 1269843),
    ("Kolkata", "India", "West Bengal", 1275004),
    ("Pune", "India", "Maharashtra", 1259229),
    ("Jaipur", "India", "Rajasthan", 1269515),
    ("Hyderabad", "Pakistan", "Sindh", 1176734),
    ("Karachi", "Pakistan", "Sindh", 1174872),
    ("Lahore", "Pakistan", "Punjab", 1172451),
    ("New York", "United States", "New York", 5128581),
    ("Los Angeles", "United States", "California", 5368361),
    ("Chicago", "United States", "Illinois", 4887398),
    ("Houston", "United States", "Texas", 4699066),
    ("Paris", "United States", "Texas", 4717560),
    ("Phoenix", "United States", "Arizona", 5308655),
    ("Atlanta", "United States", "Georgia", 4180439),
    ("Seattle", "United States", "Washington", 5809844),
    ("Boston", "United States", "Massachusetts", 4930956),
    ("Springfield", "United States", "Illinois", 4250542),
    ("Springfield", "United States", "Missouri", 4409896),
    ("Portland", "United States", "Oregon", 5746545),
    ("Portland", "United States", "Maine", 4975802),
    ("Dublin", "United States", "Ohio", 4509884),
    ("Birmingham", "United States", "Alabama", 4049979),
    ("Melbourne", "United States", "Florida", 4163971),
    ("Cambridge", "United States", "Massachusetts", 4931972),
    ("Richmond", "United States", "Virginia", 4781708),
    ("London", "United Kingdom", "England", 2643743),
    ("Manchester", "United Kingdom", "England", 2643123),
    ("Birmingham", "United Kingdom", "England", 2655603),
    ("Glasgow", "United Kingdom", "Scotland", 2648579),
    ("Cardiff", "United Kingdom", "Wales", 2653822),
    ("Belfast", "United Kingdom", "Northern Ireland", 2655984),
    ("Cambridge", "United Kingdom", "England", 2653941),
    ("Leeds", "United Kingdom", "England", 2644688),
    ("London", "Canada", "Ontario", 6058560),
    ("Toronto", "Canada", "Ontario", 6167865),
    ("Vancouver", "Canada", "British Columbia", 6173331),
    ("Montreal", "Canada", "Quebec", 6077243),
    ("Victoria", "Canada", "British Columbia", 6174041),
    ("Cambridge", "Canada", "Ontario", 5914132),
    ("Richmond", "Canada", "British Columbia", 6122085),
    ("Sydney", "Australia", "New South Wales", 2147714),
    ("Melbourne", "Australia", "Victoria", 2158177),
    ("Brisbane", "Australia", "Queensland", 2174003),
    ("Perth", "Australia", "Western Australia", 2063523),
    ("Richmond", "Australia", "Victoria", 2151649),
    ("Auckland", "New Zealand", "Auckland", 2193733),
    ("Wellington", "New Zealand", "Wellington", 2179537),
    ("Springfield", "New Zealand", "Canterbury", 2181524),
    ("Christchurch", "New Zealand", "Canterbury", 2192362),
    ("Sao Paulo", "Brazil", "Sao Paulo", 3448439),
    ("Rio de Janeiro", "Brazil", "Rio de Janeiro", 3451190),
    ("Brasilia", "Brazil", "Federal District", 3469058),
    ("Salvador", "Brazil", "Bahia", 3450554),
    ("Dublin", "Ireland", "Leinster", 2964574),
    ("Cork", "Ireland", "Munster", 2965140),
    ("Paris", "France", "Ile-de-France", 2988507),
    ("Lyon", "France", "Auvergne-Rhone-Alpes", 2996944),
    ("Marseille", "France", "Provence-Alpes-Cote d'Azur", 2995469),
    ("Berlin", "Germany", "Berlin", 2950159),
    ("Munich", "Germany", "Bavaria", 2867714),
    ("Hamburg", "Germany", "Hamburg", 2911298),
    ("Rome", "Italy", "Lazio", 3169070),
    ("Milan", "Italy", "Lombardy", 3173435),
    ("Madrid", "Spain", "Madrid", 3117735),
    ("Barcelona", "Spain", "Catalonia", 3128760),
    ("Mexico City", "Mexico", "Mexico City", 3530597),
    ("Guadalajara", "Mexico", "Jalisco", 4005539),
    ("Lagos", "Nigeria", "Lagos", 2332459),
    ("Abuja", "Nigeria", "Federal Capital Territory", 2352778),
    ("Nairobi", "Kenya", "Nairobi", 184745),
    ("Mombasa", "Kenya", "Mombasa", 186301),
    ("Cape Town", "South Africa", "Western Cape", 3369157),
    ("Johannesburg", "South Africa", "Gauteng", 993800),
    ("Durban", "South Africa", "KwaZulu-Natal", 1007311),
    ("Singapore", "Singapore", "Central Singapore", 1880252),
    ("Tokyo", "Japan", "Tokyo", 1850147),
    ("Osaka", "Japan", "Osaka", 1853909),
    ("Beijing", "China", "Beijing", 1816670),
    ("Shanghai", "China", "Shanghai", 1796236),
    ("Tbilisi", "Georgia", "Tbilisi", 611717),
    ("Batumi", "Georgia", "Ajaria", 615532),
    ("St. John's", "Canada", "Newfoundland and Labrador", 6324733),
    ("Washington", "United States", "District of Columbia", 4140963),
    ("San Francisco", "United States", "California", 5391959),
    ("Austin", "United States", "Texas", 4671654),
    ("Dallas", "United States", "Texas", 4684888),
    ("Miami", "United States", "Florida", 4164138),
    ("Denver", "United States", "Colorado", 5419384),
    ("Edinburgh", "United Kingdom", "Scotland", 2650225),
    ("Liverpool", "United Kingdom", "England", 2644210),
    ("Oxford", "United Kingdom", "England", 2640729),
    ("Ottawa", "Canada", "Ontario", 6094817),
    ("Adelaide", "Australia", "South Australia", 2078025),
    ("Kingston", "Jamaica", "Kingston", 3489854),
    ("Kingston", "Canada", "Ontario", 5992500),
]

# Extra abbreviation column used by the fixture-table variant; empty when the
# row provides none.
ABBREVS = {
    ("New York", "United States"): "NY",
    ("Los Angeles", "United States"): "CA",
    ("Houston", "United States"): "TX",
    ("London", "United Kingdom"): "UK",
    ("Manchester", "United Kingdom"): "GB",
    ("New York2", "United States"): "USA",
    ("Toronto", "Canada"): "ON",
    ("Mumbai", "India"): "IN",
    ("Sydney", "Australia"): "AU",
    ("Auckland", "New Zealand"): "NZ",
    ("Washington", "United States"): "DC",
    ("Atlanta", "United States"): "GA",
}


def write_world_cities():
    with open(os.path.join(DATA, "world_cities.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["name", "country", "subcountry", "geonameid"])
        for row in CITY_ROWS:
            w.writerow(row)


def write_cities_abbrev():
    with open(os.path.join(FIXTURES, "cities_abbrev.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["name", "country", "subcountry", "geonameid", "abbreviation"])
        for name, country, sub, gid in CITY_ROWS:
            abbrev = ABBREVS.get((name, country), "")
            w.writerow([name, country, sub, gid, abbrev])
        # one synthetic row so "USA" resolves in the fixture table
        w.writerow(["New York City", "United States", "New York", 5128582, "USA"])


# ---------------------------------------------------------------------------
# Geo fixture: expected outcomes derived from the documented rules
# ---------------------------------------------------------------------------

KIND_PRIORITY = ["country", "abbreviation", "subcountry", "city", "geoname"]


def normalize_place(s):
    out = []
    for ch in s.lower():
        if ch in ".'":
            continue
        if not ch.isascii():
            out.append(" ")
        elif ch.isalnum():
            out.append(ch)
        else:
            out.append(" ")
    return " ".join("".join(out).split())


def build_index(rows, with_abbrev):
    index = {}

    def add(key, kind, country):
        if not key:
            return
        index.setdefault(key, []).append((kind, country))

    for row in rows:
        name, country, sub, gid = row[0], row[1], row[2], row[3]
        add(normalize_place(name), "city", country)
        add(normalize_place(country), "country", country)
        add(normalize_place(sub), "subcountry", country)
        add(str(gid), "geoname", country)
        if with_abbrev and len(row) > 4 and row[4]:
            add(normalize_place(row[4]), "abbreviation", country)
    return index


def resolve(index, raw):
    segments = [normalize_place(p) for p in raw.split(",")]
    segments = [s for s in segments if s]
    for kind in KIND_PRIORITY:
        for seg in reversed(segments):
            entries = [e for e in index.get(seg, []) if e[0] == kind]
            if not entries:
                continue
            counts = {}
            for _, country in entries:
                counts[country] = counts.get(country, 0) + 1
            best = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
            country = best[0][0]
            ambiguous = len(counts) > 1
            return country, ("ambiguous" if ambiguous else "resolved")
    return "", "unresolved"


GEO_RAW_CASES = [
    "India",
    "india",
    "INDIA",
    "  United Kingdom  ",
    "U.S.A.",
    "usa",
    "UK",
    "u.k.",
    "New York, USA",
    "New York",
    "NY",
    "TX",
    "Houston, TX",
    "London",
    "London, UK",
    "London, Ontario",
    "London, England",
    "Springfield",
    "Hyderabad",
    "Hyderabad, Sindh",
    "Hyderabad, India",
    "Paris",
    "Paris, Texas",
    "Paris, France",
    "India, London",
    "London, India",
    "Mumbai, Maharashtra, India",
    "Toronto, ON",
    "St. John's",
    "Sao Paulo, Brazil",
    "Georgia",
    "Atlanta, Georgia",
    "Tbilisi, Georgia",
    "Melbourne",
    "Cambridge",
    "Richmond",
    "Kingston",
    "Dublin",
    "Birmingham",
    "Victoria",
    "1275339",
    "somewhere, 2643743",
    "Mars",
    "",
    "   ",
    "the moon",
    "earth, milky way",
    "n/a",
    "!!!",
    "Lagos; Nigeria",
]


def write_geo_cases():
    rows = []
    with open(os.path.join(FIXTURES, "cities_abbrev.csv")) as f:
        reader = csv.reader(f)
        header = next(reader)
        assert header == ["name", "country", "subcountry", "geonameid", "abbreviation"]
        rows = list(reader)
    index = build_index(rows, with_abbrev=True)
    assert len(GEO_RAW_CASES) == 50
    with open(os.path.join(FIXTURES, "geo_cases.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["raw_location", "expected_country", "expected_status"])
        for raw in GEO_RAW_CASES:
            country, status = resolve(index, raw)
            w.writerow([raw, country, status])


# ---------------------------------------------------------------------------
# Sample tweet corpus and cases table
# ---------------------------------------------------------------------------

POSITIVE_WORDS = sorted(w for w, v in LEXICON.items() if v > 0 and w.isalpha())
NEGATIVE_WORDS = sorted(w for w, v in LEXICON.items() if v < 0 and w.isalpha())
BOOSTERS = ["very", "really", "extremely", "so", "totally", "slightly", "somewhat"]
NEGATORS = ["not", "never", "don't", "can't", "isn't", "no"]
NEUTRAL_FILLER = [
    "today", "update", "report", "numbers", "city", "people", "home", "work",
    "school", "street", "morning", "evening", "week", "month", "everyone",
    "stay", "inside", "masks", "hands", "wash", "distance", "online", "zoom",
    "groceries", "store",
]
EMO_TOKENS = sorted(EMOTION_WORDS)
HASHTAGS = ["#covid19", "#stayhome", "#lockdown", "#health", "#news", "#2020"]

LOCATION_POOL = [
    "Mumbai, India", "Delhi", "India", "New York", "Los Angeles, California",
    "United States", "London", "London, England", "United Kingdom",
    "Toronto, Canada", "Sydney, Australia", "Melbourne", "Auckland",
    "Sao Paulo, Brazil", "Dublin", "Paris, France", "Berlin, Germany",
    "Lagos, Nigeria", "Nairobi", "Cape Town, South Africa", "Singapore",
    "Tokyo, Japan", "Hyderabad", "Springfield", "Karachi, Pakistan",
    "somewhere on earth", "the internet", "Mars", "worldwide", "",
]

MONTH_WEIGHTS = {
    1: 2, 2: 3, 3: 8, 4: 9, 5: 7, 6: 6, 7: 6, 8: 5, 9: 5, 10: 5, 11: 4, 12: 4,
}

DAYS_IN_MONTH = [31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31]


def make_text(rng):
    kind = rng.randrange(10)
    pieces = []
    if kind <= 3:  # positive-leaning
        pieces.append(rng.choice(["feeling", "this is", "what a", "such a"]))
        if rng.random() < 0.4:
            pieces.append(rng.choice(BOOSTERS))
        pieces.append(rng.choice(POSITIVE_WORDS))
        pieces.append(rng.choice(NEUTRAL_FILLER))
    elif kind <= 7:  # negative-leaning
        if rng.random() < 0.3:
            pieces.append(rng.choice(NEGATORS))
        pieces.append(rng.choice(["the news is", "everything feels", "it is"]))
        if rng.random() < 0.4:
            pieces.append(rng.choice(BOOSTERS))
        pieces.append(rng.choice(NEGATIVE_WORDS))
        pieces.append(rng.choice(NEUTRAL_FILLER))
    else:  # neutral-leaning
        pieces.extend(rng.sample(NEUTRAL_FILLER, 4))
    if rng.random() < 0.5:
        pieces.append(rng.choice(EMO_TOKENS))
    if rng.random() < 0.3:
        pieces.append(rng.choice(HASHTAGS))
    if rng.random() < 0.15:
        pieces.append("@newsdesk")
    if rng.random() < 0.1:
        pieces.append("https://example.com/story")
    text = " ".join(pieces)
    r = rng.random()
    if r < 0.15:
        text += "!"
    elif r < 0.2:
        text += "!!!"
    elif r < 0.25:
        text += "?"
    return text


def write_sample_tweets():
    rng = random.Random(20201204)
    months = [m for m, w in MONTH_WEIGHTS.items() for _ in range(w)]
    path = os.path.join(DATA, "sample_tweets.jsonl")
    with open(path, "w", newline="\n") as f:
        for i in range(500):
            month = rng.choice(months)
            day = rng.randrange(1, DAYS_IN_MONTH[month - 1] + 1)
            rec = {
                "id": f"t{i + 1:05d}",
                "text": make_text(rng),
                "date": f"2020-{month:02d}-{day:02d}",
            }
            if rng.random() < 0.85:
                rec["user_location"] = rng.choice(LOCATION_POOL)
            f.write(json.dumps(rec) + "\n")


CASE_COUNTRIES = {
    "India": (3, 1.10),
    "United States": (8, 1.09),
    "United Kingdom": (2, 1.08),
    "Brazil": (2, 1.09),
    "Canada": (1, 1.07),
}


def write_sample_cases():
    rng = random.Random(77)
    path = os.path.join(DATA, "sample_cases.csv")
    dates = []
    for month in range(1, 13):
        for day in range(1, DAYS_IN_MONTH[month - 1] + 1, 7):
            dates.append(f"2020-{month:02d}-{day:02d}")
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["date", "country", "confirmed", "deaths", "recovered"])
        for country, (start, growth) in sorted(CASE_COUNTRIES.items()):
            confirmed = float(start)
            deaths = 0.0
            recovered = 0.0
            for d in dates:
                confirmed *= growth * (1.0 + rng.uniform(-0.02, 0.02))
                deaths = max(deaths, confirmed * 0.02)
                recovered = max(recovered, confirmed * 0.5)
                w.writerow([d, country, int(confirmed), int(deaths),
                            int(recovered)])


def main():
    os.makedirs(DATA, exist_ok=True)
    os.makedirs(FIXTURES, exist_ok=True)
    write_lexicon()
    write_emotion_lexicon()
    write_world_cities()
    write_cities_abbrev()
    write_geo_cases()
    write_sample_tweets()
    write_sample_cases()
    print("fixtures written", file=sys.stderr)


if __name__ == "__main__":
    main()
