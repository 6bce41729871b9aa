// Generates the bundled US-states demo corpus: 50 state names embedded in
// hyponym pattern contexts with tiered support, a handful of look-alike
// traps that only weak patterns pick up, and a few hundred distractor
// sentences.  Output is deterministic.
//
// Usage: gen_states_corpus <output-dir> <truth-file>

#include <cassert>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace {

const std::vector<std::string> kStates = {
    "Alabama",       "Alaska",        "Arizona",      "Arkansas",      "California",
    "Colorado",      "Connecticut",   "Delaware",     "Florida",       "Georgia",
    "Hawaii",        "Idaho",         "Illinois",     "Indiana",       "Iowa",
    "Kansas",        "Kentucky",      "Louisiana",    "Maine",         "Maryland",
    "Massachusetts", "Michigan",      "Minnesota",    "Mississippi",   "Missouri",
    "Montana",       "Nebraska",      "Nevada",       "New Hampshire", "New Jersey",
    "New Mexico",    "New York",      "North Carolina", "North Dakota", "Ohio",
    "Oklahoma",      "Oregon",        "Pennsylvania", "Rhode Island",  "South Carolina",
    "South Dakota",  "Tennessee",     "Texas",        "Utah",          "Vermont",
    "Virginia",      "Washington",    "West Virginia", "Wisconsin",    "Wyoming"};

const std::vector<std::string> kAbbrev = {
    "AL", "AK", "AZ", "AR", "CA", "CO", "CT", "DE", "FL", "GA", "HI", "ID", "IL",
    "IN", "IA", "KS", "KY", "LA", "ME", "MD", "MA", "MI", "MN", "MS", "MO", "MT",
    "NE", "NV", "NH", "NJ", "NM", "NY", "NC", "ND", "OH", "OK", "OR", "PA", "RI",
    "SC", "SD", "TN", "TX", "UT", "VT", "VA", "WA", "WV", "WI", "WY"};

// tiers by index: A 0..19, B 20..34, C 35..44, D 45..49
std::vector<int> range(int lo, int hi) {
  std::vector<int> out;
  for (int i = lo; i < hi; ++i) out.push_back(i);
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  // "A", "A and B", "A, B and C"
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += (i + 1 == items.size()) ? " and " : ", ";
    out += items[i];
  }
  return out;
}

struct CorpusBuilder {
  std::vector<std::vector<std::string>> docs;
  std::map<int, std::set<int>> state_docs;  // state index -> docs mentioning it in a pattern

  explicit CorpusBuilder(int n_docs) : docs(static_cast<size_t>(n_docs)) {}

  void add(int doc, const std::string& sentence, const std::vector<int>& states) {
    docs[static_cast<size_t>(doc)].push_back(sentence);
    for (int s : states) state_docs[s].insert(doc);
  }
};

// Splits `order` into chunks of `width` and hands each chunk a doc id.
template <typename MakeSentence>
void schedule(CorpusBuilder& b, const std::vector<int>& order, int width, int doc_base,
              int doc_range, int doc_shift, MakeSentence&& make) {
  int chunk = 0;
  for (size_t i = 0; i < order.size(); i += static_cast<size_t>(width), ++chunk) {
    std::vector<int> group;
    for (size_t j = i; j < order.size() && j < i + static_cast<size_t>(width); ++j)
      group.push_back(order[j]);
    std::vector<std::string> names;
    for (int s : group) names.push_back(kStates[static_cast<size_t>(s)]);
    int doc = doc_base + (chunk + doc_shift) % doc_range;
    b.add(doc, make(names), group);
  }
}

const std::vector<std::string> kIncludingLead = {
    "Analysts toured", "Brochures cover", "The atlas highlights", "Planners shortlisted",
    "The almanac profiles", "Editors featured"};
const std::vector<std::string> kSuchAsLead = {
    "Surveys ranked", "The quiz covered", "Readers compared", "The review charted"};
const std::vector<std::string> kAndOtherLead = {
    "Families visited", "Tourists explored", "Collectors mapped", "Retirees toured"};

std::vector<std::string> distractors() {
  const std::vector<std::string> subjects = {
      "The committee", "The mayor",      "Our neighbor",   "The museum",   "A local baker",
      "The coach",     "Her cousin",     "The librarian",  "The gardener", "The festival crew",
      "The teacher",   "A young artist", "The shopkeeper", "His mentor"};
  const std::vector<std::string> actions = {
      "reviewed the annual budget",     "hosted a pottery workshop",
      "planned a quiet garden party",   "organized the winter concert",
      "repaired the old wooden fence",  "baked fresh bread for the market",
      "practiced a new folk song",      "catalogued the photo archive",
      "sketched the harbor at dawn",    "prepared a hearty soup recipe",
      "repainted the community hall",   "sorted donated library books",
      "rehearsed the spring play",      "tended the rooftop beehives",
      "mended the sails before the regatta"};
  const std::vector<std::string> tails = {
      "on Tuesday",        "after the long meeting", "despite the rain",
      "before the holidays", "with great care",      "over the weekend",
      "for the third time",  "without any fuss",     "under a clear sky",
      "while humming softly"};
  std::vector<std::string> out;
  for (size_t i = 0; out.size() < 240; ++i) {
    const auto& s = subjects[i % subjects.size()];
    const auto& a = actions[(i * 7 + i / subjects.size()) % actions.size()];
    const auto& t = tails[(i * 3 + 1) % tails.size()];
    out.push_back(s + " " + a + " " + t + ".");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: gen_states_corpus <output-dir> <truth-file>\n";
    return 2;
  }
  std::filesystem::path outdir(argv[1]);
  std::filesystem::path truth_path(argv[2]);
  std::filesystem::create_directories(outdir);
  std::filesystem::create_directories(truth_path.parent_path());

  const auto tier_a = range(0, 20), tier_b = range(20, 35), tier_c = range(35, 45),
             tier_d = range(45, 50);
  auto concat = [](std::initializer_list<std::vector<int>> parts) {
    std::vector<int> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
  };

  CorpusBuilder b(44);

  // "US states, including A, B and C." -- tiers A x3, B x2, C x2
  {
    auto full = concat({tier_a, tier_b, tier_c});
    for (int r = 0; r < 3; ++r) {
      const auto& order = (r < 2) ? full : tier_a;
      int lead = 0;
      schedule(b, order, 3, 0, 12, r * 5, [&](const std::vector<std::string>& names) {
        const auto& l = kIncludingLead[static_cast<size_t>(lead++ + r) % kIncludingLead.size()];
        return l + " US states, including " + join_list(names) + ".";
      });
    }
  }

  // "US states such as A, B and C." -- tiers A x2, B x2
  {
    auto full = concat({tier_a, tier_b});
    for (int r = 0; r < 2; ++r) {
      int lead = 0;
      schedule(b, full, 3, 12, 8, r * 3, [&](const std::vector<std::string>& names) {
        const auto& l = kSuchAsLead[static_cast<size_t>(lead++ + r) % kSuchAsLead.size()];
        return l + " US states such as " + join_list(names) + ".";
      });
    }
  }

  // "A, B and other US states." -- first half of A x2, C x2
  {
    auto order = concat({range(0, 10), tier_c});
    for (int r = 0; r < 2; ++r) {
      int lead = 0;
      schedule(b, order, 2, 20, 7, r * 3, [&](const std::vector<std::string>& names) {
        const auto& l = kAndOtherLead[static_cast<size_t>(lead++ + 2 * r) % kAndOtherLead.size()];
        return l + " " + join_list(names) + " and other US states.";
      });
    }
  }

  // "A or other US states." -- C0..C5 x1
  for (int i = 0; i < 6; ++i) {
    int s = tier_c[static_cast<size_t>(i)];
    b.add(27 + i % 3, "Movers head to " + kStates[static_cast<size_t>(s)] + " or other US states.",
          {s});
  }

  // "such US states as A and B." -- B0..B7 x1, D x2
  {
    for (int r = 0; r < 2; ++r) {
      auto order = (r == 0) ? concat({range(20, 28), tier_d}) : tier_d;
      schedule(b, order, 2, 30, 4, r * 2, [&](const std::vector<std::string>& names) {
        return "Planners studied such US states as " + join_list(names) + ".";
      });
    }
  }

  // "US states, especially A and B." -- C6..C9 x1, D x2
  {
    for (int r = 0; r < 2; ++r) {
      auto order = (r == 0) ? concat({range(41, 45), tier_d}) : tier_d;
      schedule(b, order, 2, 34, 3, r, [&](const std::vector<std::string>& names) {
        return "Guides praise US states, especially " + join_list(names) + ".";
      });
    }
  }

  // "X is a US state." -- D x1, plus traps that only this pattern sees
  for (size_t i = 0; i < tier_d.size(); ++i) {
    int s = tier_d[i];
    b.add(37 + static_cast<int>(i) % 3,
          "Teachers remind pupils that " + kStates[static_cast<size_t>(s)] + " is a US state.",
          {s});
  }
  b.add(37, "Reporters noted Dallas is a US state fair hotspot.", {});
  b.add(38, "Critics say Reno is a US state fair mainstay.", {});
  b.add(39, "Locals joke Branson is a US state fair rival.", {});

  // "X is the US state ..." -- two strong states
  b.add(40, "Students recall that Alabama is the US state with vast plains.", {0});
  b.add(40, "Students recall that Alaska is the US state with long coastlines.", {1});

  // "US states X and Y ..." -- bare compound, barely supported
  b.add(40, "Try US states Alabama and Arizona first.", {0, 2});

  // Literal noise for the zero-weight patterns: the phrases occur, but no
  // noun phrase sits in the slot, so nothing is extracted.
  b.add(41, "Crowds gathered early, a US state fair tradition locals cherish.", {});
  b.add(41, "The parade rolled on, the US state fair spirit undimmed.", {});
  b.add(41, "Judges toured the US state fairgrounds yesterday.", {});

  // "Joe is a country singer" style traps (harmless for this query).
  b.add(42, "Everyone knows Joe is a country singer.", {});
  b.add(42, "Folks say Joe is a country singer at heart.", {});
  b.add(42, "Mary is a country music fan.", {});

  // pad every document with distractor sentences
  auto filler = distractors();
  size_t fi = 0;
  size_t filler_used = 0;
  for (auto& doc : b.docs) {
    while (doc.size() < 8 && fi < filler.size()) {
      doc.push_back(filler[fi++]);
      ++filler_used;
    }
  }

  // every state needs enough distinct supporting documents for its tier
  for (int s = 0; s < 50; ++s) {
    size_t docs = b.state_docs[s].size();
    size_t need = s < 20 ? 4 : 3;
    if (docs < need) {
      std::cerr << "state " << kStates[static_cast<size_t>(s)] << " has only " << docs
                << " supporting docs\n";
      return 1;
    }
  }
  if (filler_used < 200) {
    std::cerr << "only " << filler_used << " distractor sentences\n";
    return 1;
  }

  int doc_no = 0;
  for (const auto& doc : b.docs) {
    char name[32];
    std::snprintf(name, sizeof(name), "doc%02d.txt", doc_no++);
    std::ofstream out(outdir / name);
    for (const auto& sentence : doc) out << sentence << "\n";
  }

  std::ofstream truth(truth_path);
  truth << "# US state names; '|' separates accepted alternates.\n";
  for (size_t i = 0; i < kStates.size(); ++i) truth << kStates[i] << "|" << kAbbrev[i] << "\n";

  std::cout << "wrote " << doc_no << " documents, " << filler_used << " distractors, "
            << kStates.size() << " truth entries\n";
  return 0;
}
