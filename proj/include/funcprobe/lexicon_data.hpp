//
// Copyright 2026 The funcprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

// Generated by tools/embed_lexicons.py from data/lexicons/. Do not edit.

#include <string_view>

namespace funcprobe::lexicon_data {

inline constexpr std::string_view kWhWords = R"lex(# wh-words targeted by the wh-word acceptability task
who
what
where
when
why
how
)lex";

inline constexpr std::string_view kConjunctions = R"lex(# coordinating conjunctions
and
but
or
)lex";

inline constexpr std::string_view kArticles = R"lex(# definite article first, then the indefinite forms
the
a
an
)lex";

inline constexpr std::string_view kPrepositions = R"lex(# swappable prepositions for the NLI preposition task (41 items)
about
above
across
after
against
ahead of
all over
along
among
around
at
before
behind
below
beneath
beside
by
for
from
in
in front of
inside
inside of
into
near
nearby
next to
on
on top of
out of
outside
outside of
over
past
through
to
under
up
within
with
without
)lex";

inline constexpr std::string_view kComparatives = R"lex(# comparative pairs; selection uses the union of both columns
more	less
more	fewer
bigger	smaller
larger	smaller
greater	lesser
higher	lower
better	worse
older	younger
longer	shorter
taller	shorter
faster	slower
earlier	later
heavier	lighter
stronger	weaker
richer	poorer
easier	harder
wider	narrower
deeper	shallower
warmer	colder
hotter	cooler
closer	farther
most	least
best	worst
biggest	smallest
largest	smallest
highest	lowest
)lex";

inline constexpr std::string_view kQuantifiers = R"lex(# common quantifiers
all
some
none
every
each
many
few
most
several
both
# proportions
half
quarter
third
one-third
two-thirds
one-quarter
three-quarters
dozen
dozens
hundreds
thousands
millions
# number words
one
two
three
four
five
six
seven
eight
nine
ten
eleven
twelve
thirteen
fourteen
fifteen
sixteen
seventeen
eighteen
nineteen
twenty
thirty
forty
fifty
sixty
seventy
eighty
ninety
hundred
thousand
million
billion
)lex";

inline constexpr std::string_view kSpatialWords = R"lex(# words describing spatial configurations
left
right
close
far
near
above
below
behind
front
top
bottom
inside
outside
north
south
east
west
upstairs
downstairs
beside
between
ahead
nearby
distant
)lex";

inline constexpr std::string_view kAntonyms = R"lex(# antonym pairs, one pair per line (tab-separated); lookup is symmetric
# version 1
common	uncommon
clean	dirty
happy	sad
good	bad
big	small
large	tiny
long	short
tall	low
hot	cold
warm	cool
wet	dry
old	young
new	ancient
fast	slow
quick	sluggish
early	late
easy	difficult
hard	soft
heavy	light
strong	weak
rich	poor
expensive	cheap
full	empty
open	closed
true	false
right	wrong
correct	incorrect
possible	impossible
likely	unlikely
legal	illegal
able	unable
fair	unfair
kind	cruel
friendly	hostile
safe	dangerous
healthy	sick
alive	dead
awake	asleep
loud	quiet
noisy	silent
bright	dark
beautiful	ugly
pretty	plain
clever	stupid
smart	dumb
wise	foolish
brave	cowardly
calm	anxious
polite	rude
honest	dishonest
patient	impatient
careful	careless
helpful	useless
important	unimportant
necessary	unnecessary
relevant	irrelevant
usual	unusual
normal	abnormal
natural	artificial
real	fake
simple	complex
cheerful	gloomy
positive	negative
optimistic	pessimistic
active	passive
busy	idle
present	absent
visible	invisible
known	unknown
familiar	strange
public	private
formal	informal
official	unofficial
modern	traditional
permanent	temporary
major	minor
maximum	minimum
inner	outer
internal	external
upper	lower
first	last
beginning	end
start	finish
win	lose
won	lost
winner	loser
success	failure
successful	unsuccessful
succeed	fail
accept	reject
agree	disagree
allow	forbid
love	hate
like	dislike
include	exclude
increase	decrease
rise	fall
buy	sell
bought	sold
give	take
gave	took
push	pull
arrive	depart
enter	exit
remember	forget
remembered	forgot
always	never
often	rarely
everything	nothing
everyone	nobody
everywhere	nowhere
many	few
more	less
most	least
inside	outside
above	below
before	after
up	down
over	under
north	south
east	west
front	back
top	bottom
near	far
here	there
yes	no
day	night
morning	evening
summer	winter
sunny	cloudy
peace	war
friend	enemy
ally	opponent
question	answer
ask	reply
cause	effect
problem	solution
profit	loss
income	expense
credit	debit
import	export
supply	demand
attack	defense
victory	defeat
guilty	innocent
rural	urban
wild	tame
male	female
husband	wife
king	queen
parent	child
teacher	student
employer	employee
buyer	seller
host	guest
master	servant
majority	minority
plus	minus
odd	even
thick	thin
wide	narrow
deep	shallow
sharp	blunt
smooth	rough
straight	crooked
tight	loose
fat	skinny
sweet	sour
fresh	stale
raw	cooked
sober	drunk
generous	selfish
humble	proud
serious	funny
interesting	boring
exciting	dull
comfortable	uncomfortable
convenient	inconvenient
pleasant	unpleasant
lucky	unlucky
fortunate	unfortunate
aware	unaware
certain	uncertain
clear	unclear
fortunately	unfortunately
obvious	obscure
responsible	irresponsible
regular	irregular
complete	incomplete
perfect	imperfect
mature	immature
moral	immoral
rational	irrational
efficient	inefficient
effective	ineffective
expensively	cheaply
quickly	slowly
loudly	quietly
arrival	departure
advantage	disadvantage
benefit	harm
strength	weakness
wealth	poverty
joy	sorrow
hope	despair
pleasure	pain
praise	criticism
reward	punishment
)lex";

inline constexpr std::string_view kAnExceptions = R"lex(# words whose article choice violates the vowel-initial rule
# consonant-initial words that take "an"
hour
hours
hourly
honest
honestly
honor
honour
honorable
honourable
heir
heiress
# vowel-initial words that take "a"
one
once
unit
united
unique
uniform
union
universal
university
user
useful
usual
usually
utility
unicorn
uranium
euro
european
eulogy
ewe
ukulele
)lex";

}  // namespace funcprobe::lexicon_data
