"""
Putting spaces back into inscription text
=========================================

Old Tamil inscriptions run words together. A word list and a shortest
segmentation recover the breaks; unknown stretches are kept whole.
"""

from epigocr import segment

print(segment.split_graphemes("தமிழ்").clusters)
print(segment.normalize_base("தமிழ்").clusters)

lex = segment.build_lexicon(["அவன்", "அவள்", "வந்தான்", "போனான்", "ஊர்"])
for text in ["அவன்வந்தான்", "அவள்ஊர்போனான்", "அவன்கடல்போனான்"]:
    seg = segment.word_break(text, lex)
    kinds = [p.kind for p in seg.pieces]
    print(f"{text} -> {segment.render_spaced(seg, text)}  {kinds} cost={seg.cost}")
