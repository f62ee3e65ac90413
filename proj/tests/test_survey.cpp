#include <catch2/catch_amalgamated.hpp>

#include "finexch/survey.hpp"

using namespace finexch;

namespace {

const char* kLikertCsv =
    "label\n1\n4\n4\n2\n4\n1\n4\n2\n1\n4\n";

}  // namespace

TEST_CASE("survey parsing builds the sample histogram") {
  const std::vector<std::string> one_to_five{"1", "2", "3", "4", "5"};
  const SurveyDataset survey = parse_survey(kLikertCsv, one_to_five);
  CHECK(survey.size() == 10);
  CHECK(survey.histogram().counts() ==
        std::vector<std::int64_t>{3, 2, 0, 5, 0});
  CHECK_FALSE(survey.grouped());
}

TEST_CASE("derived label sets are sorted lexicographically") {
  const SurveyDataset survey = parse_survey("label\nc\na\nc\nb\n");
  CHECK(survey.labels().names() ==
        std::vector<std::string>{"a", "b", "c"});
  CHECK(survey.histogram().counts() == std::vector<std::int64_t>{1, 1, 2});
}

TEST_CASE("survey parse errors carry line numbers") {
  CHECK_THROWS_WITH(parse_survey(""), "empty survey");
  CHECK_THROWS_WITH(parse_survey("label\n"), "empty survey");
  CHECK_THROWS_WITH(
      parse_survey("label\n1\n6\n", std::vector<std::string>{"1", "2"}),
      "line 3: unknown label '6'");
  CHECK_THROWS_WITH(parse_survey("label,label\n1,1\n"),
                    "duplicate header column 'label'");
  CHECK_THROWS_AS(parse_survey("answer\n1\n"), ValidationError);
  CHECK_THROWS_WITH(parse_survey("label,group\n1\n"),
                    "line 2: expected 2 fields, found 1");
  CHECK_THROWS_WITH(parse_survey("label,group\n1,\n"),
                    "line 2: empty group id");
}

TEST_CASE("grouped surveys split histograms by first appearance") {
  const SurveyDataset survey = parse_survey(
      "label,group\nyes,west\nno,east\nyes,west\nyes,east\n");
  REQUIRE(survey.grouped());
  const auto groups = survey.group_histograms();
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].first == "west");
  CHECK(groups[0].second.counts() == std::vector<std::int64_t>{0, 2});
  CHECK(groups[1].first == "east");
  CHECK(groups[1].second.counts() == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("quoted fields and blank lines are tolerated") {
  const SurveyDataset survey =
      parse_survey("label\n\"strongly, agree\"\nagree\n\nagree\n");
  CHECK(survey.size() == 3);
  CHECK(survey.labels().names() ==
        std::vector<std::string>{"agree", "strongly, agree"});
}

TEST_CASE("label list files") {
  CHECK(parse_label_list("1\n2\n3\n") ==
        std::vector<std::string>{"1", "2", "3"});
  CHECK(parse_label_list("a\r\nb\r\n") == std::vector<std::string>{"a", "b"});
  CHECK_THROWS_AS(parse_label_list("\n\n"), ValidationError);
}
