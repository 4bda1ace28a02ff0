#include <string>
#include <vector>

#include "doctest.h"
#include "mixtag/errors.hpp"
#include "mixtag/features.hpp"

using namespace mixtag;

namespace {

ResourceBundle small_bundle() {
  ResourceBundle bundle;
  bundle.per_language[0] = Lexicon("en", true);
  bundle.per_language[0].insert("take");
  bundle.per_language[0].insert("this");
  bundle.per_language[1] = Lexicon("bn", true);
  bundle.per_language[1].insert("take");
  bundle.per_language[1].insert("ami");
  bundle.emoticons = Lexicon("emoticon", false);
  bundle.emoticons.insert(":/");
  bundle.gazetteer = Lexicon("gazetteer", true);
  bundle.gazetteer.insert("Mumbai");
  return bundle;
}

}  // namespace

TEST_CASE("capitalization flags") {
  auto mumbai = capitalization_flags("Mumbai");
  CHECK(mumbai.first_upper);
  CHECK(mumbai.any_upper);
  CHECK_FALSE(mumbai.all_upper);

  auto bcse = capitalization_flags("BCSE");
  CHECK(bcse.first_upper);
  CHECK(bcse.any_upper);
  CHECK(bcse.all_upper);

  auto g3 = capitalization_flags("3G");
  CHECK_FALSE(g3.first_upper);  // first character is a digit
  CHECK(g3.any_upper);
  CHECK(g3.all_upper);  // the only letter is uppercase

  auto take = capitalization_flags("take");
  CHECK_FALSE(take.first_upper);
  CHECK_FALSE(take.any_upper);
  CHECK_FALSE(take.all_upper);

  // no letters at all: all_upper stays 0
  auto num = capitalization_flags("30");
  CHECK_FALSE(num.all_upper);

  SUBCASE("flags are monotone: first_upper or all_upper imply any_upper") {
    for (std::string_view tok :
         {"Mumbai", "BCSE", "3G", "take", "iPhone", "McDonald", "#Tag", "30"}) {
      auto f = capitalization_flags(tok);
      if (f.first_upper) CHECK(f.any_upper);
      if (f.all_upper) CHECK(f.any_upper);
    }
  }
}

TEST_CASE("character shape flags") {
  Lexicon emoticons("emoticon", false);
  emoticons.insert(":/");
  emoticons.insert(":)");

  auto hashtag = character_flags("#aapsweep", emoticons);
  CHECK(hashtag.hashtag);
  CHECK_FALSE(hashtag.mention);
  CHECK_FALSE(hashtag.symbol);  // '#' is masked for structural tokens

  auto mention = character_flags("@user", emoticons);
  CHECK(mention.mention);
  CHECK_FALSE(mention.hashtag);
  CHECK_FALSE(mention.symbol);

  auto url = character_flags("http://t.co/x", emoticons);
  CHECK(url.url);
  CHECK_FALSE(url.symbol);
  CHECK(character_flags("HTTPS://x.y", emoticons).url);
  CHECK(character_flags("httpish", emoticons).url);  // prefix rule, by design
  CHECK_FALSE(character_flags("htt", emoticons).url);

  auto emo = character_flags(":/", emoticons);
  CHECK(emo.emoticon);
  CHECK_FALSE(emo.symbol);
  CHECK_FALSE(character_flags(":-(", emoticons).emoticon);

  auto gr8 = character_flags("gr8", emoticons);
  CHECK(gr8.has_digit);
  CHECK_FALSE(gr8.number);
  CHECK_FALSE(gr8.symbol);

  auto num = character_flags("30", emoticons);
  CHECK(num.has_digit);
  CHECK(num.number);

  auto hyph = character_flags("angul-er", emoticons);
  CHECK(hyph.symbol);
  CHECK_FALSE(hyph.has_digit);
  CHECK_FALSE(hyph.number);

  auto plain = character_flags("take", emoticons);
  CHECK_FALSE(plain.hashtag);
  CHECK_FALSE(plain.symbol);
  CHECK_FALSE(plain.has_digit);
  CHECK_FALSE(plain.number);
}

TEST_CASE("dictionary flags follow the fixed language order") {
  ResourceBundle bundle = small_bundle();
  auto take = dictionary_flags("take", bundle);
  CHECK(take[0]);  // en
  CHECK(take[1]);  // bn
  for (int i = 2; i < 9; ++i) CHECK_FALSE(take[i]);

  auto ami = dictionary_flags("ami", bundle);
  CHECK_FALSE(ami[0]);
  CHECK(ami[1]);

  auto this_upper = dictionary_flags("This", bundle);
  CHECK(this_upper[0]);  // lookups are case-folded
}

TEST_CASE("ne flags combine gazetteer and the external column") {
  Lexicon gaz("gazetteer", true);
  gaz.insert("mumbai");
  CHECK(ne_flags(Token{"Mumbai", -1, -1}, gaz).gazetteer);
  CHECK_FALSE(ne_flags(Token{"Mumbai", -1, -1}, gaz).external);
  CHECK(ne_flags(Token{"take", -1, 1}, gaz).external);
  CHECK_FALSE(ne_flags(Token{"take", -1, 0}, gaz).external);
  CHECK_FALSE(ne_flags(Token{"take", -1, -1}, gaz).external);
}

TEST_CASE("observation matrix layout") {
  ResourceBundle bundle = small_bundle();
  Utterance utt = tokenize_query("Mumbai take 30");
  ObservationMatrix matrix = build_observation_matrix(utt, bundle);
  REQUIRE(matrix.size() == 3);

  // row 0: "Mumbai"
  CHECK(matrix.at(0, 0) == "Mumbai");
  CHECK(matrix.at(0, 1) == "6");
  CHECK(matrix.at(0, 2) == "1");   // CAP1
  CHECK(matrix.at(0, 3) == "1");   // CAP2
  CHECK(matrix.at(0, 4) == "0");   // CAP3
  CHECK(matrix.at(0, 21) == "1");  // NE1 gazetteer hit
  CHECK(matrix.at(0, 22) == "0");  // NE2 absent

  // row 1: "take" sits in both en and bn lexicons
  CHECK(matrix.at(1, 12) == "1");
  CHECK(matrix.at(1, 13) == "1");
  CHECK(matrix.at(1, 14) == "0");

  // row 2: "30" is all digits
  CHECK(matrix.at(2, 1) == "2");
  CHECK(matrix.at(2, 10) == "1");  // CHR6
  CHECK(matrix.at(2, 11) == "1");  // CHR7

  SUBCASE("every flag column is 0 or 1") {
    for (std::size_t t = 0; t < matrix.size(); ++t) {
      for (int c = 2; c < kObservationColumns; ++c) {
        bool binary = matrix.at(t, c) == "0" || matrix.at(t, c) == "1";
        CHECK(binary);
      }
    }
  }
}

TEST_CASE("length column counts code points, not bytes") {
  ResourceBundle bundle;
  Utterance utt;
  utt.tokens.push_back(Token{"প্যার", -1, -1});
  ObservationMatrix matrix = build_observation_matrix(utt, bundle);
  CHECK(matrix.at(0, 1) == "5");
}

TEST_CASE("char ngrams enumerate contiguous substrings") {
  auto grams = char_ngrams("ab", 2);
  REQUIRE(grams.size() == 3);
  CHECK(grams[0] == "NG1:a");
  CHECK(grams[1] == "NG1:b");
  CHECK(grams[2] == "NG2:ab");

  auto solo = char_ngrams("a", 5);
  REQUIRE(solo.size() == 1);
  CHECK(solo[0] == "NG1:a");

  auto ami = char_ngrams("ami", 2);
  REQUIRE(ami.size() == 5);
  CHECK(ami[3] == "NG2:am");
  CHECK(ami[4] == "NG2:mi");

  CHECK_THROWS_AS(char_ngrams("ami", 0), ConfigError);
  CHECK_THROWS_AS(char_ngrams("ami", 6), ConfigError);
}

TEST_CASE("char ngrams respect code point boundaries") {
  auto grams = char_ngrams("né", 2);
  REQUIRE(grams.size() == 3);
  CHECK(grams[0] == "NG1:n");
  CHECK(grams[1] == "NG1:é");
  CHECK(grams[2] == "NG2:né");
}

TEST_CASE("matrix renders as tab separated rows") {
  ResourceBundle bundle = small_bundle();
  LabelSet labels = LabelSet::default_set();
  auto corpus = parse_corpus("take\ten\n", true, labels);
  const Utterance& utt = corpus.utterances[0];
  ObservationMatrix matrix = build_observation_matrix(utt, bundle);

  std::string with_gold = render_matrix_tsv(matrix, utt, &labels);
  CHECK(with_gold.starts_with("take\t4\t"));
  CHECK(with_gold.ends_with("\ten\n"));

  std::string bare = render_matrix_tsv(matrix, utt, nullptr);
  CHECK_FALSE(bare.ends_with("\ten\n"));
  // 23 columns means 22 tabs per line
  std::size_t tabs = 0;
  for (char c : bare) {
    if (c == '\t') ++tabs;
  }
  CHECK(tabs == 22);
}

TEST_CASE("ascii_only narrows letter classification") {
  auto cap = capitalization_flags("École", true);
  CHECK_FALSE(cap.first_upper);  // É is not an ASCII letter
  auto cap_wide = capitalization_flags("École", false);
  CHECK(cap_wide.first_upper);

  Lexicon emoticons("emoticon", false);
  auto chr = character_flags("école", emoticons, true);
  CHECK(chr.symbol);  // é counts as a symbol under ascii_only
  auto chr_wide = character_flags("école", emoticons, false);
  CHECK_FALSE(chr_wide.symbol);
}
