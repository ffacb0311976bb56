"""Canonical story material and the declarative mock-fixture corpus.

The two one-paragraph story summaries serve as demo drafts; the corpus
tables below drive the generated fixture files under ``fixtures/``.
"""

from __future__ import annotations

CINDERELLA_SUMMARY = (
    "Cinderella lived as a servant in her own home, forced by her cruel "
    "stepmother and stepsisters to cook, scrub, and sleep among the cinders. "
    '"You\'re just a servant," her stepsisters sneered whenever she dreamed '
    "aloud of the royal ball. With the help of her fairy godmother, who "
    "conjured a gown and a glass coach, Cinderella attended the ball, where "
    "the Prince danced with her all evening and fell in love. Fleeing at "
    "midnight, she lost a glass slipper on the palace steps. The Prince "
    "searched the kingdom for the foot that fit the slipper, found "
    "Cinderella despite her stepfamily's schemes, and married her, lifting "
    "her from the ashes to the throne."
)

ALICE_SUMMARY = (
    "Alice, bored beside her sister on a riverbank, followed a hurried White "
    "Rabbit down a rabbit hole and tumbled into Wonderland. There she grew "
    "and shrank by sips and bites, swam in a pool of her own tears, and met "
    "a parade of curious figures: a hookah-smoking Caterpillar, a grinning "
    "Cheshire Cat, and a Mad Hatter presiding over an endless tea party. "
    "Summoned to the croquet ground of the tyrannical Queen of Hearts, Alice "
    "watched the Queen demand beheadings at every turn, until a nonsensical "
    "trial over stolen tarts pushed her to defy the court. As the Queen's "
    "cards swarmed her, Alice woke on the riverbank, wondering at her "
    "strange and vivid dream."
)

# Default passages a demo highlights; also the keys of the root fixtures.
CINDERELLA_PROBE_PART = (
    "Cinderella lived as a servant in her own home, forced by her cruel "
    "stepmother and stepsisters to cook, scrub, and sleep among the cinders."
)
SERVANT_DIALOGUE = "You're just a servant"
ALICE_PROBE_PART = (
    "Alice, bored beside her sister on a riverbank, followed a hurried White "
    "Rabbit down a rabbit hole and tumbled into Wonderland."
)

CINDERELLA_ROOTS = [
    "Characters",
    "Theme",
    "Plot",
    "Settings",
    "Romance",
    "Military",
    "Emotions",
    "Humor",
]

ALICE_ROOTS = [
    "Characters",
    "Theme",
    "Plot",
    "Settings",
    "Absurdity",
    "Imagination",
    "Emotions",
    "Tone",
]

# Sub-direction hierarchy; keys are qualified paths.
SUB_DIRECTIONS: dict[str, list[str]] = {
    "Characters": ["species", "identity", "profession", "relationships"],
    "Characters > relationships": ["Family", "Romance", "Friendship", "Rivalry"],
    "Theme": ["Romance", "Adventure", "Mystery", "Love"],
    "Theme > Love": ["Romantic", "Platonic", "Familial", "Unconditional"],
    "Plot": ["Conflict", "Climax", "Resolution", "Foreshadowing"],
    "Plot > Climax": ["Culmination", "Confrontation", "Tension", "Uncertainty"],
    "Settings": ["Location", "Era", "Landscape", "Environment"],
    "Settings > Location": ["Terrain", "Scenery", "Climate", "Topology"],
    "Romance": ["Passion", "Intimacy", "Commitment", "Affection"],
    "Romance > Intimacy": ["Physical", "Emotional", "Spiritual", "Mental"],
    "Military": ["Weapons", "Codes", "Training", "Ranks"],
    "Military > Codes": ["Societal", "Cultural", "Religious", "Linguistics"],
    "Emotions": ["happy", "sad", "anger", "relief"],
    "Emotions > sad": ["depressed", "loss", "melancholic", "grief"],
    "Humor": ["slapstick", "satire", "parody", "wordplay"],
}

# The three-direction selection the demo workflow converges on.
WORKFLOW_SELECTION = ["Settings > Location > Terrain", "Romance", "Theme"]

# Synthesis fixtures; keys are the joined qualified-path lists, values are
# the alternative outputs served on successive calls (ordinals 1, 2, ...).
SYNTHESIS_FIXTURES: dict[tuple[str, ...], list[str]] = {
    tuple(WORKFLOW_SELECTION): [
        (
            "Cinderella toiled on the **windswept crags** above the manor, "
            "scrubbing stone steps carved into the **mountainside**, yet every "
            "evening she lingered over thoughts of the **Prince she had never "
            "met**, certain that some **grand design of fate** would carry her "
            "beyond the cinders."
        ),
        (
            "High on a **rocky highland farm**, Cinderella hauled water across "
            "**frost-cracked fields**, while her heart rehearsed a **courtship "
            "that existed only in her daydreams**, a quiet **fable of hope** "
            "she told no one."
        ),
    ],
    ("mocking",): [
        (
            '"**Look at the little maid**," her stepsisters sneered whenever '
            "she dreamed aloud of the royal ball."
        ),
        (
            '"**Off to sweep your palace of ashes?**" her stepsisters jeered, '
            "curtsying at the cinder girl with mock reverence."
        ),
    ],
    ("humorous > slapstick", "setting > location"): [
        (
            "In a **slippery seaside village**, Cinderella chased her chores "
            "downhill: she **tripped over her bucket**, surfed the soapy "
            "cobbles past the **harbor market**, and landed mop-first in the "
            "mayor's prize herring cart."
        ),
        (
            "Transplanted to a **creaky mountain chalet**, Cinderella waxed "
            "the stairs a touch too well, and her stepsisters **tobogganed "
            "down three flights on a tea tray**, scattering doves and "
            "dignity alike."
        ),
    ],
}
