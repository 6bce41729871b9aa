#ifndef WILDQ_BUILTIN_LEXICON_HPP
#define WILDQ_BUILTIN_LEXICON_HPP

#include <sstream>
#include <string_view>

#include "wildq/lexicon.hpp"

namespace wildq {

// Default lexicon tables, embedded in the same formats the loader reads
// from a --lexicon directory.  Deliberately small; serious use should
// supply domain tables.

inline std::string_view builtin_similar_tsv() {
  return R"TSV(# word <TAB> comma-separated similar terms
blockbuster	movie,film
movie	film,picture
film	movie,picture
acquired	bought,purchased
bought	acquired,purchased
purchased	acquired,bought
country	nation
nation	country
writer	author,novelist
author	writer,novelist
novelist	writer,author
car	automobile,vehicle
)TSV";
}

inline std::string_view builtin_inflect_tsv() {
  return R"TSV(# singular <TAB> plural
movie	movies
film	films
picture	pictures
blockbuster	blockbusters
country	countries
nation	nations
state	states
city	cities
company	companies
writer	writers
author	authors
novelist	novelists
journalist	journalists
singer	singers
manufacturer	manufacturers
automobile	automobiles
vehicle	vehicles
car	cars
bulb	bulbs
invention	inventions
inventor	inventors
disease	diseases
medication	medications
name	names
list	lists
class	classes
year	years
day	days
man	men
woman	women
child	children
person	people
resource	resources
question	questions
answer	answers
engine	engines
pattern	patterns
query	queries
tuple	tuples
document	documents
page	pages
snippet	snippets
phrase	phrases
noun	nouns
word	words
sentence	sentences
fact	facts
table	tables
row	rows
column	columns
candidate	candidates
result	results
guide	guides
survey	surveys
analyst	analysts
family	families
visitor	visitors
tourist	tourists
teacher	teachers
pupil	pupils
student	students
reporter	reporters
critic	critics
fan	fans
collector	collectors
manager	managers
planner	planners
retiree	retirees
mover	movers
local	locals
plain	plains
coastline	coastlines
border	borders
capital	capitals
museum	museums
park	parks
mountain	mountains
river	rivers
lake	lakes
forest	forests
desert	deserts
beach	beaches
island	islands
festival	festivals
market	markets
farm	farms
road	roads
train	trains
library	libraries
school	schools
garden	gardens
recipe	recipes
song	songs
story	stories
report	reports
committee	committees
meeting	meetings
budget	budgets
project	projects
team	teams
season	seasons
winter	winters
game	games
concert	concerts
ticket	tickets
painting	paintings
artist	artists
actor	actors
director	directors
studio	studios
theater	theaters
kitchen	kitchens
bakery	bakeries
coach	coaches
player	players
trail	trails
cabin	cabins
orchard	orchards
voyage	voyages
journey	journeys
novel	novels
poem	poems
essay	essays
)TSV";
}

inline std::string_view builtin_verbs_tsv() {
  return R"TSV(# base <TAB> past <TAB> past participle <TAB> present third singular
invent	invented	invented	invents
acquire	acquired	acquired	acquires
buy	bought	bought	buys
purchase	purchased	purchased	purchases
discover	discovered	discovered	discovers
find	found	found	finds
found	founded	founded	founds
make	made	made	makes
write	wrote	written	writes
take	took	taken	takes
give	gave	given	gives
sell	sold	sold	sells
build	built	built	builds
create	created	created	creates
design	designed	designed	designs
develop	developed	developed	develops
produce	produced	produced	produces
direct	directed	directed	directs
compose	composed	composed	composes
paint	painted	painted	paints
win	won	won	wins
hold	held	held	holds
lead	led	led	leads
run	ran	run	runs
see	saw	seen	sees
know	knew	known	knows
say	said	said	says
tell	told	told	tells
teach	taught	taught	teaches
think	thought	thought	thinks
bring	brought	brought	brings
catch	caught	caught	catches
fight	fought	fought	fights
hear	heard	heard	hears
keep	kept	kept	keeps
leave	left	left	leaves
lose	lost	lost	loses
meet	met	met	meets
pay	paid	paid	pays
read	read	read	reads
send	sent	sent	sends
spend	spent	spent	spends
stand	stood	stood	stands
understand	understood	understood	understands
sing	sang	sung	sings
announce	announced	announced	announces
establish	established	established	establishes
launch	launched	launched	launches
publish	published	published	publishes
record	recorded	recorded	records
)TSV";
}

inline std::string_view builtin_nouns_txt() {
  return R"TXT(# extra nouns (single words) and compound nouns (multi-word lines)
light
summer
history
audience
music
weather
rain
snow
coffee
tea
bread
news
research and development
rock and roll
)TXT";
}

inline std::string_view builtin_stoplist_txt() {
  return R"TXT(# sentence-initial words never treated as proper nouns
the
a
an
this
that
these
those
it
its
he
she
they
we
i
you
who
what
when
where
why
how
there
here
some
any
many
much
most
more
few
all
every
each
no
not
one
two
three
if
in
on
at
by
for
with
from
to
of
and
or
but
so
as
is
are
was
were
be
been
being
have
has
had
do
does
did
will
would
should
could
can
may
might
must
everyone
somebody
nobody
people
today
yesterday
tomorrow
meanwhile
however
although
because
since
while
during
after
before
finally
first
second
third
next
then
now
soon
later
often
sometimes
usually
never
always
try
visit
consider
remember
please
yes
maybe
perhaps
popular
)TXT";
}

inline std::string_view builtin_adjectives_txt() {
  return R"TXT(# words accepted in the adjective position of a noun phrase
popular
red
blue
green
large
small
big
new
old
good
great
famous
annual
local
national
early
late
young
happy
quiet
busy
bright
dark
warm
cold
fresh
vast
scenic
historic
modern
rural
urban
gentle
)TXT";
}

// Lexicon built from the embedded tables above.
inline Lexicon builtin_lexicon() {
  Lexicon lex;
  auto feed = [&lex](std::string_view data, void (Lexicon::*fn)(std::istream&)) {
    std::istringstream in{std::string(data)};
    (lex.*fn)(in);
  };
  feed(builtin_similar_tsv(), &Lexicon::load_similar);
  feed(builtin_inflect_tsv(), &Lexicon::load_inflections);
  feed(builtin_verbs_tsv(), &Lexicon::load_verbs);
  feed(builtin_nouns_txt(), &Lexicon::load_nouns);
  feed(builtin_stoplist_txt(), &Lexicon::load_stoplist);
  feed(builtin_adjectives_txt(), &Lexicon::load_adjectives);
  return lex;
}

}  // namespace wildq

#endif  // WILDQ_BUILTIN_LEXICON_HPP
