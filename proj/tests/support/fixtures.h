// tests/support/fixtures.h

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Small text fixtures for every file format. Each is already in the
// writer's canonical form, so write(parse(x)) == x.

#ifndef ALTSCORE_TESTS_SUPPORT_FIXTURES_H_
#define ALTSCORE_TESTS_SUPPORT_FIXTURES_H_

#include <string>
#include <vector>

namespace altscore::testing {

inline const std::string kAltBlockListing =
    "sw_4390 A * * <ALT_BEGIN>\n"
    "sw_4390 A 4.49 0.66 UM\n"
    "sw_4390 A * * <ALT>\n"
    "sw_4390 A 4.49 0.66 I'M\n"
    "sw_4390 A * * <ALT_END>\n";

inline std::vector<std::string> StmFixtures() {
  return {
      "sw_4390 A sw_4390_A 4.49 5.15 (%HESITATION) I'M\n",
      "sw_4390 A sw_4390_A 0 2 HELLO THERE\n",
      "r1 1 spk 0 1.5 A\nr1 1 spk 1.5 3 B C\n",
      "r1 A s 0.25 0.75 <O,F0,MALE> WORD\n",
      "r1 A s 0 10 IGNORE_TIME_SEGMENT_IN_SCORING\n",
      "r1 A s 0 1 { I'M / I AM }\n",
      "r1 A s 0 1 { UH-HUH / @ }\n",
      "r1 A s 0 1 A { B / C D / @ } E\n",
      "r1 A s 0 1 (UH) (UM) YEAH\n",
      "r1 A s 0 1 X\nr1 B s 0 1 Y\nr2 A s 0 1 Z\n",
      "r1 A s 100.125 200.5 LONG SEGMENT WITH MANY WORDS IN IT\n",
      "r1 A s 0 0.01 SHORT\n",
      "en_4156 A en_4156_A 301.85 302.48 UH-HUH\n",
      "r1 A s 0 1 DON'T\n",
      "r1 A s 0 1 %HESITATION\n",
      "r1 A s 0 1 <O> (%HESITATION)\n",
      "r1 A s 5 6 B\nr1 A s 0 1 A\n",
      "r1 A s 0 1 GONNA { GOING TO / GONNA }\n",
      "r1 A s 0 1 A-\n",
      "r1 A s 0 1 O.K.\n",
      "r1 A s 0 3 A B C\nr1 A s 3 4 IGNORE_TIME_SEGMENT_IN_SCORING\nr1 A s 4 5 D\n",
  };
}

inline std::vector<std::string> CtmFixtures() {
  return {
      kAltBlockListing,
      "sw_4390 A 4.49 0.66 UM\n",
      "r1 A 0 0.5 A\nr1 A 0.5 0.5 B\n",
      "r1 A 0 0.5 A 0.9\n",
      "r1 A 0 0.5 A 1\nr1 A 0.5 0.25 B 0.125\n",
      "r1 A * * <ALT_BEGIN>\nr1 A 1 0.5 A\nr1 A * * <ALT>\nr1 A * * <ALT_END>\n",
      "r1 A * * <ALT_BEGIN>\nr1 A 1 0.25 I\nr1 A 1.25 0.25 AM\nr1 A * * <ALT>\nr1 A 1 0.5 I'M\n"
      "r1 A * * <ALT_END>\n",
      "r1 A 0 1 X\nr1 A * * <ALT_BEGIN>\nr1 A 1 1 Y\nr1 A * * <ALT>\nr1 A 1 1 Z\nr1 A * * <ALT_END>\nr1 A 2 1 W\n",
      "r1 A * * <ALT_BEGIN>\nr1 A 0 1 A\nr1 A * * <ALT>\nr1 A 0 1 B\nr1 A * * <ALT>\nr1 A 0 1 C\n"
      "r1 A * * <ALT_END>\n",
      "r1 1 0 1 A\nr1 2 0 1 B\n",
      "r2 A 10.01 0.02 UH-HUH\n",
      "r1 A 0 0 ZERO\n",
      "r1 A 123.456 0.789 PRECISE\n",
      "r1 A 0 1 DON'T\n",
      "r1 A 0 1 %HESITATION\n",
      "r1 A * * <ALT_BEGIN>\nr1 A * * <ALT>\nr1 A 2 1 B\nr1 A * * <ALT_END>\n",
      "r1 A 0 1 A\nr2 A 0 1 B\nr1 A 1 1 C\n",
      "r1 A * * <ALT_BEGIN>\nr1 A 0 1 A\nr1 A * * <ALT_END>\n",
      "r1 A 0 1 A 0.5\nr1 A 1 1 B 0.25\nr1 A 2 1 C 0.75\n",
      "r1 A * * <ALT_BEGIN>\nr1 A 0 0.5 A 0.5\nr1 A * * <ALT>\nr1 A 0 0.5 B 0.25\nr1 A * * <ALT_END>\n",
      "en_4156 B 1 0.3 YEAH\n",
  };
}

inline std::vector<std::string> GlmFixtures() {
  return {
      "I'M => I AM\n",
      "I'M => { I'M / I AM }\n",
      "GONNA => { GONNA / GOING TO }\n",
      "UH-HUH => { UH-HUH / @ }\n",
      "O.K. => OKAY\n",
      "I'M => I AM / [from_contraction]\n",
      "A B => C\n",
      "A B C => { A B C / ABC }\n",
      "X => { X / Y / Z }\n",
      "DON'T => { DON'T / DO NOT }\nCAN'T => { CAN'T / CANNOT / CAN NOT }\n",
      "MHM => { MHM / MM-HMM / UH-HUH }\n",
      "A => B ;; comment kept\n",
      "HE'S => { HE'S / HE IS / HE HAS }\n",
      "ALRIGHT => ALL RIGHT\n",
      "KINDA => { KINDA / KIND OF }\n",
      "A => { @ / B }\n",
      "WANNA => { WANNA / WANT TO }\nGOTTA => { GOTTA / GOT TO }\n",
      "THEY'RE => { THEY'RE / THEY ARE }\n",
      "%HESITATION => UH\n",
      "COULDA => { COULDA / COULD HAVE }\n",
  };
}

inline std::vector<std::string> LatticeFixtures() {
  return {
      "0 1 A 0 10 0.5\nfinal 1 0\n",
      "0 1 UM 449 515 1\n0 1 I'M 449 515 1.5\nfinal 1 0\n",
      "0 1 A 0 5 0\n1 2 B 5 10 0\nfinal 2 0\n",
      "0 1 A 0 5 0\n0 2 B 0 5 1\n1 3 C 5 10 0\n2 3 C 5 10 0\nfinal 3 0.25\n",
      "0 1 <eps> 0 0 0\n1 2 A 0 4 2\nfinal 2 0\n",
      "0 1 <sil> 0 50 0\n1 2 A 50 70 0\nfinal 2 0\n",
      "start 1\n0 1 A 0 1 0\n1 2 B 1 2 0\nfinal 2 0\n",
      "0 1 A 0 1 0\nfinal 0 1\nfinal 1 0\n",
      "0 1 A 0 2 0.125\n1 2 B 2 4 0.25\n2 3 C 4 6 0.5\n3 4 D 6 8 1\nfinal 4 0\n",
      "0 1 A 0 3 1\n0 1 B 0 3 2\n0 1 C 0 3 3\nfinal 1 0\n",
      "0 1 HELLO 0 30 0.1\n1 2 WORLD 30 60 0.2\nfinal 2 0.3\n",
      "0 2 A 0 10 0\n0 1 B 0 5 0\n1 2 C 5 10 0\nfinal 2 0\n",
      "0 1 !SIL 0 10 0\nfinal 1 0\n",
      "0 1 a 0 1 0\nfinal 1 0\n",
      "0 1 A 0 1 -0.5\nfinal 1 0\n",
      "0 1 A 0 1 0\n1 2 B 1 2 0\n0 2 AB 0 2 0.5\nfinal 2 0\n",
      "0 1 X 0 1 0\n1 2 Y 1 2 0\n2 3 Z 2 3 0\n0 3 XYZ 0 3 0\nfinal 3 0\n",
      "0 1 A 10 20 0\nfinal 1 0\n",
      "0 1 A 0 1 1e-05\nfinal 1 0\n",
      "0 1 A 0 1 0\n0 1 A 0 1 0\nfinal 1 0\n",
  };
}

inline std::vector<std::string> AlternativesFixtures() {
  return {
      "utterance u1 sw_4390 A phrase\nposition 449 515\nalt 1 UM\nalt 1.5 I'M\n",
      "utterance u1 r1 A nbest\nposition 0 100\nalt 0 A B C\nalt 1 A B\n",
      "utterance u1 r1 A word\nposition 0 10\nalt 0 A\nalt 1 @\n",
      "utterance u1 r1 A phrase\nposition 0 10\nalt 0 @\n",
      "utterance u1 r1 A phrase\nposition 0 10\nalt 0 A\nposition 10 20\nalt 0 B\nalt 0.5 C D\n",
      "utterance u1 r1 A word\nposition 0 5\nalt 0 A\nposition 5 10\nalt 0 B\n",
      "utterance u1 r1 A nbest\nposition 0 50\nalt 0.25 HELLO\n",
      "utterance u1 r1 A phrase\nposition 0 1\nalt 0 A\nutterance u2 r1 A phrase\nposition 1 2\nalt 0 B\n",
      "utterance u1 r1 B phrase\nposition 0 30\nalt 2 X Y Z\nalt 3 X Y\nalt 4 X\nalt 5 @\n",
      "utterance u1 r1 A phrase\n",
      "utterance u1 r1 A word\nposition 100 150\nalt 0 I'M\nalt 1 UM\nalt 2 @\n",
      "utterance u1 r1 A nbest\nposition 0 10\nalt -1 A\n",
      "utterance u1 r1 A phrase\nposition 0 10\nalt 0 DON'T\nalt 0.125 DO NOT\n",
      "utterance seg-1 rec-1 1 phrase\nposition 0 10\nalt 0 A\n",
      "utterance u1 r1 A phrase\nposition 0 10\nalt 0 A\nposition 10 10\nalt 0 @\n",
      "utterance u1 r1 A word\nposition 0 1\nalt 0 %HESITATION\n",
      "utterance u1 r1 A nbest\nposition 0 20\nalt 1 A\nalt 2 B\nalt 3 C\nalt 4 D\n",
      "utterance u1 r1 A phrase\nposition 5 15\nalt 0.5 UH-HUH\nalt 0.75 @\n",
      "utterance u1 r1 A phrase\nposition 0 10\nalt 0 A B C D E F G\n",
      "utterance a r A word\nposition 0 10\nalt 0 A\nutterance b r A word\nposition 10 20\nalt 0 B\n"
      "utterance c r A word\nposition 20 30\nalt 0 C\n",
  };
}

}  // namespace altscore::testing

#endif  // ALTSCORE_TESTS_SUPPORT_FIXTURES_H_
