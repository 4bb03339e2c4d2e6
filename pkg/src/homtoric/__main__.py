from homtoric.cli import main

main()
