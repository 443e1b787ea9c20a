from foldcube.cli import main

main()
